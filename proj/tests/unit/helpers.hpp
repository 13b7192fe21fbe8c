#pragma once

#include <cstdint>
#include <vector>

#include "ff/matrix.hpp"
#include "ff/vector.hpp"
#include "oracles.hpp"

namespace testing {

inline oracle::Vec plain(const vc2::ff::Vector& v) { return {v.coords().begin(), v.coords().end()}; }

inline oracle::Mat plain(const vc2::ff::Matrix& m) {
  oracle::Mat out(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.at(r, c);
  return out;
}

inline vc2::ff::Vector vec(const vc2::ff::Field& f, std::vector<std::int64_t> v) {
  return vc2::ff::Vector::from_signed(f, v);
}

}  // namespace testing
