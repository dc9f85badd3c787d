#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lagfpt {

/// Model or candidate parameters outside the admissible region.
class InvalidModel : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Sample too small, or with too little dispersion, for the requested statistic.
class DegenerateSample : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// More simulated paths than allowed failed to cross the threshold by t_max.
class CensoringExceeded : public std::runtime_error {
public:
    CensoringExceeded(std::size_t censored, std::size_t paths)
        : std::runtime_error("censoring exceeded: " + std::to_string(censored) + " of " +
                             std::to_string(paths) + " paths did not cross by t_max"),
          censored_(censored),
          paths_(paths) {}

    std::size_t censored() const noexcept { return censored_; }
    std::size_t paths() const noexcept { return paths_; }

private:
    std::size_t censored_;
    std::size_t paths_;
};

/// Sample file could not be read, parsed, or written.
class SampleIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lagfpt
