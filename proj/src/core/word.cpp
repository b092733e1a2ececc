#include "geothermo/core/word.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace geothermo::core {

namespace {

std::vector<Letter> free_reduce(std::vector<Letter> in) {
    std::vector<Letter> out;
    out.reserve(in.size());
    for (Letter l : in) {
        if (!out.empty() && out.back() == l.inverse())
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

std::vector<int> rotate_to_least(std::span<const int> codes) {
    const std::size_t start = least_rotation(codes);
    std::vector<int> out(codes.begin() + static_cast<std::ptrdiff_t>(start), codes.end());
    out.insert(out.end(), codes.begin(), codes.begin() + static_cast<std::ptrdiff_t>(start));
    return out;
}

std::vector<int> inverse_codes(std::span<const int> codes) {
    std::vector<int> out(codes.rbegin(), codes.rend());
    for (int& c : out) c ^= 1;
    return out;
}

}  // namespace

GeneratorWord::GeneratorWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
    for (std::size_t i = 1; i < letters_.size(); ++i) {
        if (letters_[i] == letters_[i - 1].inverse())
            throw std::invalid_argument("word is not freely reduced");
    }
    for (Letter l : letters_) {
        if (l.code() < 0) throw std::invalid_argument("negative generator index");
    }
}

GeneratorWord GeneratorWord::parse(std::string_view text) {
    std::vector<Letter> letters;
    letters.reserve(text.size());
    for (char ch : text) {
        if (ch >= 'a' && ch <= 'z')
            letters.emplace_back(ch - 'a', false);
        else if (ch >= 'A' && ch <= 'Z')
            letters.emplace_back(ch - 'A', true);
        else
            throw std::invalid_argument(std::string("bad letter '") + ch + "' in word");
    }
    return GeneratorWord(std::move(letters));
}

GeneratorWord GeneratorWord::from_codes(std::span<const int> codes) {
    std::vector<Letter> letters;
    letters.reserve(codes.size());
    for (int c : codes) letters.push_back(Letter::from_code(c));
    return GeneratorWord(std::move(letters));
}

bool GeneratorWord::is_cyclically_reduced() const {
    if (letters_.size() < 2) return true;
    return letters_.front() != letters_.back().inverse();
}

GeneratorWord GeneratorWord::inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (Letter& l : out) l = l.inverse();
    return GeneratorWord(std::move(out));
}

GeneratorWord GeneratorWord::operator*(const GeneratorWord& rhs) const {
    std::vector<Letter> all = letters_;
    all.insert(all.end(), rhs.letters_.begin(), rhs.letters_.end());
    return GeneratorWord(free_reduce(std::move(all)));
}

std::vector<int> GeneratorWord::codes() const {
    std::vector<int> out;
    out.reserve(letters_.size());
    for (Letter l : letters_) out.push_back(l.code());
    return out;
}

std::string letter_name(Letter l) {
    if (l.generator() >= 26) throw std::out_of_range("at most 26 generators have letter names");
    return std::string(1, static_cast<char>((l.is_inverse() ? 'A' : 'a') + l.generator()));
}

std::string GeneratorWord::to_string() const {
    std::string out;
    for (Letter l : letters_) out += letter_name(l);
    return out;
}

std::size_t least_rotation(std::span<const int> s) {
    // Booth's algorithm on the doubled string.
    const std::size_t n = s.size();
    if (n == 0) return 0;
    std::vector<std::ptrdiff_t> fail(2 * n, -1);
    std::size_t k = 0;
    auto at = [&](std::size_t i) { return s[i % n]; };
    for (std::size_t j = 1; j < 2 * n; ++j) {
        const int sj = at(j);
        std::ptrdiff_t i = fail[j - k - 1];
        while (i != -1 && sj != at(k + static_cast<std::size_t>(i) + 1)) {
            if (sj < at(k + static_cast<std::size_t>(i) + 1)) k = j - static_cast<std::size_t>(i) - 1;
            i = fail[static_cast<std::size_t>(i)];
        }
        if (sj != at(k + static_cast<std::size_t>(i) + 1)) {
            // i == -1 here
            if (sj < at(k)) k = j;
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    return k % n;
}

std::size_t cyclic_period(std::span<const int> s) {
    const std::size_t n = s.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = s[i] == s[i - p];
        if (ok) return p;
    }
    return n;
}

ConjugacyClass canonicalize(const GeneratorWord& word, bool collapse_orientation) {
    if (word.is_identity()) throw std::invalid_argument("no closed geodesic for identity");

    // Cyclic reduction: strip matching inverse pairs from both ends.
    const auto& letters = word.letters();
    std::size_t lo = 0, hi = letters.size();
    while (hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    std::vector<int> codes;
    codes.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) codes.push_back(letters[i].code());

    std::vector<int> best = rotate_to_least(codes);
    if (collapse_orientation) {
        std::vector<int> inv = rotate_to_least(inverse_codes(codes));
        if (inv < best) best = std::move(inv);
    }

    const std::size_t p = cyclic_period(best);
    ConjugacyClass out;
    out.canonical = GeneratorWord::from_codes(best);
    out.primitive_root = GeneratorWord::from_codes(std::span<const int>(best).first(p));
    out.power = static_cast<int>(best.size() / p);
    out.orientation_collapsed = collapse_orientation;
    return out;
}

std::uint64_t class_count(int k, int n, bool collapse_orientation) {
    if (k < 1 || n < 1) throw std::invalid_argument("class_count needs k >= 1 and n >= 1");
    std::set<std::vector<int>> classes;
    std::vector<int> codes(static_cast<std::size_t>(n));
    const int letters = 2 * k;

    // Depth-first over freely reduced words of length n.
    auto recurse = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            if (n >= 2 && codes.front() == (codes.back() ^ 1)) return;
            const ConjugacyClass c = canonicalize(GeneratorWord::from_codes(codes), collapse_orientation);
            classes.insert(c.canonical.codes());
            return;
        }
        for (int c = 0; c < letters; ++c) {
            if (depth > 0 && c == (codes[static_cast<std::size_t>(depth - 1)] ^ 1)) continue;
            codes[static_cast<std::size_t>(depth)] = c;
            self(self, depth + 1);
        }
    };
    recurse(recurse, 0);
    return classes.size();
}

std::uint64_t cyclically_reduced_count(int k, int n) {
    if (k < 1 || n < 1) throw std::invalid_argument("cyclically_reduced_count needs k >= 1 and n >= 1");
    const std::size_t m = static_cast<std::size_t>(2 * k);
    // B[x][y] = 1 iff y may follow x (y != x^-1); closed walks of length n in B
    // are exactly the cyclically reduced words of length n.
    using Mat = std::vector<std::uint64_t>;
    Mat base(m * m, 0);
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) base[x * m + y] = (y != (x ^ 1u)) ? 1 : 0;
    auto mul = [m](const Mat& a, const Mat& b) {
        Mat c(m * m, 0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l < m; ++l)
                for (std::size_t j = 0; j < m; ++j) c[i * m + j] += a[i * m + l] * b[l * m + j];
        return c;
    };
    Mat acc = base;
    for (int i = 1; i < n; ++i) acc = mul(acc, base);
    std::uint64_t trace = 0;
    for (std::size_t i = 0; i < m; ++i) trace += acc[i * m + i];
    return trace;
}

}  // namespace geothermo::core
