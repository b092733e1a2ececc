#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace geothermo::core {

// A letter of a free group on k generators: generator index plus sign.
// Letters are totally ordered by (generator, sign) with +1 < -1, which is the
// order of the packed code 2*generator + (inverse ? 1 : 0).
class Letter {
public:
    constexpr Letter() = default;
    constexpr Letter(int generator, bool inverse) : code_(2 * generator + (inverse ? 1 : 0)) {}

    static constexpr Letter from_code(int code) {
        Letter l;
        l.code_ = code;
        return l;
    }

    constexpr int generator() const { return code_ / 2; }
    constexpr bool is_inverse() const { return (code_ & 1) != 0; }
    constexpr int sign() const { return is_inverse() ? -1 : 1; }
    constexpr int code() const { return code_; }
    constexpr Letter inverse() const { return from_code(code_ ^ 1); }

    constexpr auto operator<=>(const Letter&) const = default;

private:
    int code_ = 0;
};

// Freely reduced word in the free group. The empty word is the identity.
class GeneratorWord {
public:
    GeneratorWord() = default;
    // Throws std::invalid_argument if the letters are not freely reduced.
    explicit GeneratorWord(std::vector<Letter> letters);

    // Parses "aBc": lowercase = generator, uppercase = its inverse.
    static GeneratorWord parse(std::string_view text);
    static GeneratorWord from_codes(std::span<const int> codes);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool is_identity() const { return letters_.empty(); }
    bool is_cyclically_reduced() const;

    GeneratorWord inverse() const;
    // Concatenation followed by free reduction.
    GeneratorWord operator*(const GeneratorWord& rhs) const;

    std::vector<int> codes() const;
    std::string to_string() const;

    auto operator<=>(const GeneratorWord&) const = default;

private:
    std::vector<Letter> letters_;
};

std::string letter_name(Letter l);

struct ConjugacyClass {
    GeneratorWord canonical;
    GeneratorWord primitive_root;
    int power = 1;
    bool orientation_collapsed = false;

    bool primitive() const { return power == 1; }
    auto operator<=>(const ConjugacyClass&) const = default;
};

// Cyclic reduction, minimal rotation (also over the inverse word when
// collapse_orientation), then smallest-period detection.
// Throws std::invalid_argument("no closed geodesic for identity") for the identity.
ConjugacyClass canonicalize(const GeneratorWord& word, bool collapse_orientation);

// Index of the lexicographically least rotation (Booth's algorithm).
std::size_t least_rotation(std::span<const int> codes);

// Smallest p dividing n such that the cyclic word is invariant under rotation by p.
std::size_t cyclic_period(std::span<const int> codes);

// Number of distinct conjugacy classes among the cyclically reduced words of
// length n in F_k, by exhaustive canonicalization.
std::uint64_t class_count(int alphabet_size, int length, bool collapse_orientation);

// Number of cyclically reduced words of length n in F_k, as the trace of the
// n-th power of the non-backtracking transition matrix.
std::uint64_t cyclically_reduced_count(int alphabet_size, int length);

}  // namespace geothermo::core
