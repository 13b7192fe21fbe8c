#include "shatter/containment_map.hpp"

#include "util/error.hpp"

namespace vc2::shatter {

ContainmentMap::ContainmentMap(std::size_t side, std::uint64_t bits) : ContainmentMap(side, bits, full_mask(side)) {}

ContainmentMap::ContainmentMap(std::size_t side, std::uint64_t bits, std::uint64_t assigned)
    : side_(side), bits_(bits), assigned_(assigned) {
  require(side >= 1 && side <= kMaxSide, "containment map side must be in [1, 8]");
  require((bits & ~full_mask(side)) == 0 && (assigned & ~full_mask(side)) == 0, "containment map bits out of range");
  bits_ &= assigned_;
}

std::uint64_t ContainmentMap::count(std::size_t side) {
  require(side >= 1 && side <= 4, "map enumeration is limited to side 4");
  return std::uint64_t{1} << (side * side);
}

std::size_t ContainmentMap::bit(std::size_t i, std::size_t j) const {
  require(i < side_ && j < side_, "containment map cell out of range");
  return i * side_ + j;
}

bool ContainmentMap::at(std::size_t i, std::size_t j) const { return (bits_ >> bit(i, j)) & 1U; }

bool ContainmentMap::assigned(std::size_t i, std::size_t j) const { return (assigned_ >> bit(i, j)) & 1U; }

void ContainmentMap::set(std::size_t i, std::size_t j, bool in_a) {
  const std::uint64_t b = std::uint64_t{1} << bit(i, j);
  assigned_ |= b;
  if (in_a) bits_ |= b;
  else bits_ &= ~b;
}

ContainmentMap ContainmentMap::with(std::size_t i, std::size_t j, bool in_a) const {
  ContainmentMap out = *this;
  out.set(i, j, in_a);
  return out;
}

std::string ContainmentMap::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < side_; ++i) {
    for (std::size_t j = 0; j < side_; ++j) s += !assigned(i, j) ? '?' : (at(i, j) ? 'A' : 'c');
    s += '\n';
  }
  return s;
}

}  // namespace vc2::shatter
