#ifndef CHAINPRICE_ERRORS_HPP
#define CHAINPRICE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace chainprice {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an adjacency matrix fails one of the network rules.
// `violations` lists every broken rule with the offending indices.
struct ValidationError : Error {
    std::vector<std::string> violations;
    explicit ValidationError(std::vector<std::string> v)
        : Error(join(v)), violations(std::move(v)) {}

  private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& e : v) {
            if (!s.empty()) s += "; ";
            s += e;
        }
        return s;
    }
};

struct OutOfDomain : Error {
    using Error::Error;
};

struct OrderUnsupported : Error {
    using Error::Error;
};

struct WrongFamily : Error {
    using Error::Error;
};

struct NoGainsFromTrade : Error {
    using Error::Error;
};

struct NonMonotoneKernel : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct RootNotBracketed : Error {
    using Error::Error;
};

struct DepthTooLarge : Error {
    using Error::Error;
};

struct InputError : Error {
    using Error::Error;
};

} // namespace chainprice

#endif
