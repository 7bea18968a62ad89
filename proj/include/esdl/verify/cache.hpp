#pragma once

#include <optional>
#include <string>

#include "esdl/singular_set.hpp"

namespace esdl {

// CSV table of a SingularData: header comment lines carry p, lambda, t_max
// and the residual, then one row per point
//   kind,t,z_re,z_im,f_value
// with kind "zero" or "critical" and z = t e^{i pi/p}. Numbers use %.17g so
// a reload reproduces every double exactly.
std::string singular_to_csv(const FamilyParams& params, const SingularData& data);
// Throws std::runtime_error on malformed input.
SingularData singular_from_csv(const std::string& text);

// Cache file name for (p, lambda, t_max), stable across runs.
std::string singular_cache_name(const FamilyParams& params, double t_max);

// Loads the cached table from dir when present, otherwise computes it and
// stores it there. An empty dir disables caching. Writes go through a
// temporary file and a rename so concurrent runs never see partial files.
SingularData cached_singular_data(const FamilyParams& params, double t_max, const std::string& dir);

}  // namespace esdl
