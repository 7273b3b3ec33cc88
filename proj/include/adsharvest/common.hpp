#pragma once

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adsh {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

enum class ErrorCode {
    InvalidArgument,
    NonConvergence,
    DegenerateConfiguration,
    ExtrapolationUnstable,
    PoleOnBoundary,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

std::string_view to_string(ErrorCode c) noexcept;

/// zeta = +1 Dirichlet, 0 transparent, -1 Neumann
enum class BoundaryCondition : int { Neumann = -1, Transparent = 0, Dirichlet = 1 };

constexpr double zeta_value(BoundaryCondition bc) noexcept { return static_cast<double>(static_cast<int>(bc)); }

std::string_view to_string(BoundaryCondition bc) noexcept;
BoundaryCondition parse_boundary(std::string_view name);
BoundaryCondition boundary_from_zeta(int zeta);

struct Tolerance {
    double rel = 1e-10;
    double abs = 1e-14;
    int max_levels = 12;

    void validate() const;
    double target(double magnitude) const noexcept { return std::max(rel * magnitude, abs); }
};

template <class T>
struct Estimate {
    T value{};
    double error = 0.0;
};

}  // namespace adsh
