#include "plectic/form.hpp"

namespace plectic {

template <Variance V>
std::string Alternating<V>::str() const {
  if (comps_.empty()) return "0";
  const char* basis = (V == Variance::Co) ? "dx" : "e";
  std::string out;
  for (auto& [t, f] : comps_) {
    std::string s = "(" + f.str() + ")";
    for (size_t a = 0; a < t.size(); ++a)
      s += (a == 0 ? "*" : "^") + std::string(basis) + std::to_string(t[a]);
    out += out.empty() ? s : " + " + s;
  }
  return out;
}

template class Alternating<Variance::Co>;
template class Alternating<Variance::Contra>;

}  // namespace plectic
