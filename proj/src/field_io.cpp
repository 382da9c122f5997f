#include "yamabe/field_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace yamabe::io {

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::uint64_t bits = 0;
  std::memcpy(&bits, &value, sizeof(T));
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw std::runtime_error("field_io: truncated binary field");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= std::uint64_t(bytes[i]) << (8 * i);
  T value;
  std::memcpy(&value, &bits, sizeof(T));
  return value;
}

std::size_t node_count(std::size_t n) { return n * n * n * n; }

}  // namespace

FieldRecord FieldRecord::from(std::size_t n, const confgrid::WeightedField& f) {
  FieldRecord r{n, f.weight, {f.values}};
  r.validate();
  return r;
}

FieldRecord FieldRecord::from(std::size_t n, const forms::TwoFormField& f, int weight) {
  FieldRecord r{n, weight, {f.components.begin(), f.components.end()}};
  r.validate();
  return r;
}

void FieldRecord::validate() const {
  if (n == 0) throw std::invalid_argument("field_io: N must be positive");
  if (components.empty()) throw std::invalid_argument("field_io: at least one component required");
  for (const auto& c : components)
    if (c.size() != node_count(n))
      throw std::invalid_argument("field_io: component has " + std::to_string(c.size()) + " values, expected " +
                                  std::to_string(node_count(n)));
}

void write_binary(std::ostream& out, const FieldRecord& rec) {
  rec.validate();
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(rec.n));
  put_le<std::int32_t>(out, rec.weight);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(rec.components.size()));
  for (const auto& comp : rec.components)
    for (double v : comp) put_le<double>(out, v);
}

FieldRecord read_binary(std::istream& in) {
  FieldRecord rec;
  rec.n = get_le<std::uint32_t>(in);
  rec.weight = get_le<std::int32_t>(in);
  const auto count = get_le<std::uint32_t>(in);
  if (rec.n == 0 || count == 0) throw std::runtime_error("field_io: invalid binary header");
  rec.components.assign(count, confgrid::Field(node_count(rec.n)));
  for (auto& comp : rec.components)
    for (double& v : comp) v = get_le<double>(in);
  return rec;
}

nlohmann::json to_json(const FieldRecord& rec) {
  rec.validate();
  return {{"N", rec.n},
          {"weight", rec.weight},
          {"components", rec.components.size()},
          {"ordering", "x4-fastest"},
          {"values", rec.components}};
}

FieldRecord from_json(const nlohmann::json& j) {
  FieldRecord rec;
  try {
    rec.n = j.at("N").get<std::size_t>();
    rec.weight = j.at("weight").get<int>();
    rec.components = j.at("values").get<std::vector<confgrid::Field>>();
    if (j.at("components").get<std::size_t>() != rec.components.size())
      throw std::invalid_argument("field_io: component count does not match the values array");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("field_io: malformed field JSON: ") + e.what());
  }
  rec.validate();
  return rec;
}

}  // namespace yamabe::io
