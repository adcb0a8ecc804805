#pragma once

#include <json.hpp>

#include "sdq/alphabet.hpp"
#include "sdq/sigma_delta.hpp"

namespace sdq {

/// Designs a coarse-scheme filter for order r and stability budget gamma:
/// minimizes ||g||_1 over g_0 = 1 subject to ||delta^(0) - Delta^r g||_1 <=
/// gamma, solving one linear program per filter length d in {r, ..., sigma*r}
/// with sigma = ceil(pi^2 / acosh(gamma)^2) and keeping the best feasible d.
/// If the whole range is infeasible the sweep widens (logged to stderr) before
/// giving up with InfeasibleError. Requires 1 < gamma <= 2L so that some
/// nonempty input range is admissible.
FilterPair design_coarse_filter(int r, double gamma, const Alphabet& a);

/// JSON document {r, gamma, g: [...], h: [...]} for caching designs across runs.
nlohmann::json filter_to_json(const FilterPair& f);
FilterPair filter_from_json(const nlohmann::json& j);

}  // namespace sdq
