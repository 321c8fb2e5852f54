#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "cramer/errors.hpp"
#include "cramer/matrix.hpp"

namespace cramer {

/// A concrete point of the ambient space: an r-by-t matrix M, a t-by-s
/// matrix N with t = r + s, and (unless the omega-less flavor of the
/// equations is in play) a scalar omega.
struct ConfigurationPoint {
    RatMatrix M;
    RatMatrix N;
    std::optional<Rational> omega;

    ConfigurationPoint() = default;
    ConfigurationPoint(RatMatrix m, RatMatrix n, std::optional<Rational> w = std::nullopt)
        : M(std::move(m)), N(std::move(n)), omega(std::move(w)) {
        if (M.cols() != N.rows() || M.cols() != M.rows() + N.cols())
            throw DimensionError("ConfigurationPoint: need M r-by-t, N t-by-s with t = r+s");
    }

    std::size_t r() const { return M.rows(); }
    std::size_t s() const { return N.cols(); }
    std::size_t t() const { return M.cols(); }
    bool has_omega() const { return omega.has_value(); }

    friend bool operator==(const ConfigurationPoint& a, const ConfigurationPoint& b) {
        return a.M == b.M && a.N == b.N && a.omega == b.omega;
    }

    std::string str() const {
        std::ostringstream os;
        os << "M=" << M << " N=" << N;
        if (omega) os << " w=" << *omega;
        return os.str();
    }
};

} // namespace cramer
