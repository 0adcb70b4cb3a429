#pragma once

#include <json.hpp>

#include "heunsc/heun.hpp"

namespace heunsc {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const HeunParams& p);
ordered_json to_json(const AssocParams& a);
// Fields: params, N, coeffs.
ordered_json to_json(const AssocParams& a, const CoeffSeries& s);

}  // namespace heunsc
