#pragma once

#include <string>

#include "sphmax/typeset.hpp"

namespace sphmax::report {

// Region figure in (1/p, alpha/p) coordinates: shaded admissible region,
// the trapezoid of the classical necessary conditions, markers at 1/p_beta
// and 1/p_gamma, and a zoom inset around the lower-boundary kink.
std::string region_svg(const typeset::TypeSetRegion& region, const std::string& config_echo);

// nu_sharp profile with its envelope max(rho, beta) <= v <= max(1, rho).
std::string profile_svg(const dim::NuSharpProfile& profile, const std::string& config_echo);

}  // namespace sphmax::report
