#include "adsharvest/common.hpp"

#include <cmath>

namespace adsh {

std::string_view to_string(ErrorCode c) noexcept {
    switch (c) {
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::NonConvergence: return "non_convergence";
        case ErrorCode::DegenerateConfiguration: return "degenerate_configuration";
        case ErrorCode::ExtrapolationUnstable: return "extrapolation_unstable";
        case ErrorCode::PoleOnBoundary: return "pole_on_boundary";
        case ErrorCode::Io: return "io_error";
    }
    return "unknown";
}

std::string_view to_string(BoundaryCondition bc) noexcept {
    switch (bc) {
        case BoundaryCondition::Dirichlet: return "dirichlet";
        case BoundaryCondition::Transparent: return "transparent";
        case BoundaryCondition::Neumann: return "neumann";
    }
    return "unknown";
}

BoundaryCondition parse_boundary(std::string_view name) {
    if (name == "dirichlet" || name == "1" || name == "+1") return BoundaryCondition::Dirichlet;
    if (name == "transparent" || name == "0") return BoundaryCondition::Transparent;
    if (name == "neumann" || name == "-1") return BoundaryCondition::Neumann;
    throw Error(ErrorCode::InvalidArgument, "unknown boundary condition '" + std::string(name) + "'");
}

BoundaryCondition boundary_from_zeta(int zeta) {
    if (zeta < -1 || zeta > 1) throw Error(ErrorCode::InvalidArgument, "zeta must be -1, 0 or 1");
    return static_cast<BoundaryCondition>(zeta);
}

void Tolerance::validate() const {
    if (!(rel > 0.0) || !std::isfinite(rel)) throw Error(ErrorCode::InvalidArgument, "relative tolerance must be positive");
    if (!(abs > 0.0) || !std::isfinite(abs)) throw Error(ErrorCode::InvalidArgument, "absolute tolerance must be positive");
    if (max_levels < 3 || max_levels > 16) throw Error(ErrorCode::InvalidArgument, "max_levels must lie in [3, 16]");
}

}  // namespace adsh
