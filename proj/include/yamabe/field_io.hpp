#pragma once

// Grid field serialisation.
//
// Binary layout (all little-endian):
//   uint32 N | int32 weight | uint32 component_count |
//   component_count * N^4 float64 values, component-major, nodes in lattice
//   order (x4 fastest).
//
// JSON layout:
//   {"N": N, "weight": w, "components": c, "ordering": "x4-fastest",
//    "values": [[...N^4 numbers...], ...c arrays...]}

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "json.hpp"
#include "yamabe/forms.hpp"
#include "yamabe/grid.hpp"

namespace yamabe::io {

struct FieldRecord {
  std::size_t n = 0;
  int weight = 0;
  std::vector<confgrid::Field> components;

  static FieldRecord from(std::size_t n, const confgrid::WeightedField& f);
  static FieldRecord from(std::size_t n, const forms::TwoFormField& f, int weight = 0);

  /// Throws std::invalid_argument if any component is not N^4 long.
  void validate() const;
};

void write_binary(std::ostream& out, const FieldRecord& rec);
FieldRecord read_binary(std::istream& in);

nlohmann::json to_json(const FieldRecord& rec);
FieldRecord from_json(const nlohmann::json& j);

}  // namespace yamabe::io
