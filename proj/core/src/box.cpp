#include "uasdetect/box.hpp"

#include <algorithm>
#include <ostream>

#include "uasdetect/error.hpp"
#include "uasdetect/mask.hpp"

namespace uasdetect {

Box intersection(const Box& a, const Box& b) {
  Box r{std::max(a.x_min, b.x_min), std::max(a.y_min, b.y_min),
        std::min(a.x_max, b.x_max), std::min(a.y_max, b.y_max)};
  if (r.empty()) return Box{};
  return r;
}

std::ostream& operator<<(std::ostream& os, const Box& box) {
  return os << '[' << box.x_min << ',' << box.y_min << ',' << box.x_max << ','
            << box.y_max << ')';
}

namespace {

void require_same_shape(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_shape(b)) throw DimensionMismatch("mask shapes differ");
}

}  // namespace

BinaryMask mask_and(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b);
  BinaryMask out(a.width(), a.height());
  auto o = out.bits();
  auto x = a.bits();
  auto y = b.bits();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] & y[i];
  return out;
}

BinaryMask mask_or(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b);
  BinaryMask out(a.width(), a.height());
  auto o = out.bits();
  auto x = a.bits();
  auto y = b.bits();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] | y[i];
  return out;
}

BinaryMask complement(const BinaryMask& m) {
  BinaryMask out(m.width(), m.height());
  auto o = out.bits();
  auto x = m.bits();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] ^ 1;
  return out;
}

}  // namespace uasdetect
