#ifndef EQDISC_ERRORS_HPP
#define EQDISC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eqdisc {

/// Invalid configuration: bad ranges, pool that cannot produce terms,
/// unsupported derivative orders, malformed option strings. Maps to CLI
/// exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failure while processing data: malformed input files, non-finite
/// values, degenerate regression inputs. Maps to CLI exit code 1.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace eqdisc

#endif
