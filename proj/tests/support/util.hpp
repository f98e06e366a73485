#ifndef MINRANK_TESTS_UTIL_HPP
#define MINRANK_TESTS_UTIL_HPP

#include <memory>
#include <string>
#include <vector>

#include "minrank/commitment.hpp"
#include "minrank/matrix.hpp"

namespace testutil {

inline minrank::Matrix from_rows(minrank::FieldSpec f,
                                 std::vector<std::vector<uint16_t>> rows) {
  minrank::Matrix m(f, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, rows[r][c]);
  return m;
}

// Deterministic stream from a label; hash-expander based, so streams with
// different labels are independent.
inline minrank::RandomSource seeded_rng(const std::string& label) {
  using namespace minrank;
  Digest d = sha256().digest(
      {reinterpret_cast<const uint8_t*>(label.data()), label.size()});
  Seed seed(d.bytes.begin(), d.bytes.end());
  return RandomSource(std::make_unique<ExpandStream>(sha256(), seed, "test"));
}

}  // namespace testutil

#endif
