#pragma once

#include <stdexcept>
#include <string>

namespace geothermo {

// A selection of orbits (cumulative or window) turned out empty.
class EmptySelection : public std::runtime_error {
public:
    explicit EmptySelection(const std::string& what = "empty orbit window")
        : std::runtime_error(what) {}
};

// Too few usable t-grid points for a slope or rate estimate.
class InsufficientGrid : public std::runtime_error {
public:
    explicit InsufficientGrid(const std::string& what = "insufficient grid")
        : std::runtime_error(what) {}
};

// nu_t of the event is zero on every grid point.
class EventNeverRealized : public std::runtime_error {
public:
    explicit EventNeverRealized(const std::string& what = "event never realized")
        : std::runtime_error(what) {}
};

// rho(m) came out negative beyond tolerance; the pressure oracle is inconsistent.
class VariationalViolation : public std::logic_error {
public:
    explicit VariationalViolation(const std::string& what = "variational principle violated")
        : std::logic_error(what) {}
};

}  // namespace geothermo
