#include "heunsc/json_io.hpp"

namespace heunsc {

ordered_json to_json(const HeunParams& p) {
  return ordered_json{{"alpha", p.alpha}, {"beta", p.beta},
                      {"gamma", p.gamma}, {"delta", p.delta},
                      {"eps", p.eps},     {"s", p.s},
                      {"k2", p.k2}};
}

ordered_json to_json(const AssocParams& a) {
  ordered_json j = to_json(a.base);
  j["c"] = a.c;
  j["mu"] = a.mu;
  return j;
}

ordered_json to_json(const AssocParams& a, const CoeffSeries& s) {
  ordered_json j;
  j["params"] = to_json(a);
  j["N"] = s.order();
  j["coeffs"] = s.coeffs;
  return j;
}

}  // namespace heunsc
