#pragma once
#include <string>

namespace plectic {

// Order in which the factors of a decomposable multivector hit a form.
// FirstSlotInnermost: contract(v1^...^vk, w) applies v1 first (innermost).
enum class SlotOrder { FirstSlotInnermost, LastSlotInnermost };

// Sign weight of the inner/outer split in the homotopy Jacobi identity:
// LadaStasheff weights the (i,j) split by (-1)^{i*(j-1)}, Alternate by (-1)^{i*j}.
enum class JacobiSign { LadaStasheff, Alternate };

struct Conventions {
  SlotOrder slot_order = SlotOrder::FirstSlotInnermost;
  JacobiSign jacobi_sign = JacobiSign::LadaStasheff;
};

// Process-wide registry consulted by contraction and bracket code unless a
// caller passes an explicit override.
Conventions& conventions();

std::string to_string(SlotOrder v);
std::string to_string(JacobiSign v);
SlotOrder slot_order_from_string(const std::string& s);
JacobiSign jacobi_sign_from_string(const std::string& s);

}  // namespace plectic
