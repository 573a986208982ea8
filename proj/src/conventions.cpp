#include "plectic/conventions.hpp"

#include "plectic/error.hpp"

namespace plectic {

Conventions& conventions() {
  static Conventions c;
  return c;
}

std::string to_string(SlotOrder v) {
  return v == SlotOrder::FirstSlotInnermost ? "first-innermost" : "last-innermost";
}

std::string to_string(JacobiSign v) {
  return v == JacobiSign::LadaStasheff ? "lada-stasheff" : "alternate";
}

SlotOrder slot_order_from_string(const std::string& s) {
  if (s == "first-innermost") return SlotOrder::FirstSlotInnermost;
  if (s == "last-innermost") return SlotOrder::LastSlotInnermost;
  fail(Errc::InvalidArgument, "unknown slot order '" + s + "'");
}

JacobiSign jacobi_sign_from_string(const std::string& s) {
  if (s == "lada-stasheff") return JacobiSign::LadaStasheff;
  if (s == "alternate") return JacobiSign::Alternate;
  fail(Errc::InvalidArgument, "unknown structure identity sign '" + s + "'");
}

}  // namespace plectic
