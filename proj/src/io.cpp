// Copyright 2026 The distsamp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "distsamp/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace distsamp {
namespace {

constexpr std::array<char, 4> kPackedMagic = {'D', 'S', 'P', 'K'};

void put_u32(std::ostream& os, std::uint32_t v) {
  const std::array<char, 4> b = {static_cast<char>(v & 0xff),
                                 static_cast<char>((v >> 8) & 0xff),
                                 static_cast<char>((v >> 16) & 0xff),
                                 static_cast<char>((v >> 24) & 0xff)};
  os.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), 4)) {
    throw ParameterError("truncated binary header");
  }
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

Json region_json(Region r) { return Json::array({r.lo, r.hi}); }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& columns)
    : os_(os), columns_(columns.size()) {
  os_ << "#schema=" << kCsvSchema << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) {
    os_ << (i ? "," : "") << columns[i];
  }
  os_ << '\n';
}

void CsvWriter::sep() {
  if (filled_ == columns_) throw ParameterError("CSV row has too many fields");
  if (filled_++ > 0) os_ << ',';
}

CsvWriter& CsvWriter::operator<<(double v) {
  sep();
  os_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::operator<<(int v) {
  sep();
  os_ << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(long v) {
  sep();
  os_ << v;
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v) {
  sep();
  os_ << v;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw ParameterError("CSV row has too few fields");
  os_ << '\n';
  filled_ = 0;
}

Json to_json(const FieldParams& p) {
  return {{"bandwidth_W", p.bandwidth_W},
          {"amplitude_A", p.amplitude_A},
          {"lambda", p.lambda},
          {"margin_delta", p.margin_delta}};
}

FieldParams field_params_from_json(const Json& j) {
  FieldParams p;
  p.bandwidth_W = j.value("bandwidth_W", p.bandwidth_W);
  p.amplitude_A = j.value("amplitude_A", p.amplitude_A);
  p.lambda = j.value("lambda", p.lambda);
  p.margin_delta = j.value("margin_delta", p.margin_delta);
  p.validate();
  return p;
}

Json to_json(const BandlimitedField& f) {
  Json kernel = {{"shape", f.kernel.name()},
                 {"W", f.kernel.W},
                 {"delta", f.kernel.delta},
                 {"time_scale", f.kernel.time_scale}};
  return {{"kind", to_string(f.kind)},
          {"params", to_json(f.params)},
          {"kernel", kernel},
          {"origin", f.origin},
          {"spacing", f.spacing},
          {"support_halfwidth_L", f.support_halfwidth_L},
          {"amplitude_scale", f.amplitude_scale},
          {"seed", f.seed},
          {"extent", region_json(f.extent)},
          {"coeffs", f.coeffs}};
}

BandlimitedField field_from_json(const Json& j) {
  try {
    BandlimitedField f;
    f.kind = field_kind_from_string(j.at("kind").get<std::string>());
    f.params = field_params_from_json(j.at("params"));
    const Json& k = j.at("kernel");
    const std::string shape = k.at("shape").get<std::string>();
    require(shape == "zakai" || shape == "fejer", "unknown kernel shape " + shape);
    f.kernel.shape =
        shape == "zakai" ? FieldKernel::Shape::kZakai : FieldKernel::Shape::kFejer;
    f.kernel.W = k.at("W").get<double>();
    f.kernel.delta = k.at("delta").get<double>();
    f.kernel.time_scale = k.at("time_scale").get<double>();
    f.origin = j.at("origin").get<double>();
    f.spacing = j.at("spacing").get<double>();
    f.support_halfwidth_L = j.at("support_halfwidth_L").get<int>();
    f.amplitude_scale = j.at("amplitude_scale").get<double>();
    f.seed = j.at("seed").get<std::uint64_t>();
    f.extent = {j.at("extent").at(0).get<double>(), j.at("extent").at(1).get<double>()};
    f.coeffs = j.at("coeffs").get<std::vector<double>>();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed field document: ") + e.what());
  }
}

Json to_json(const DitherSpec& d) {
  Json j = {{"kind", to_string(d.kind)}, {"gamma", d.gamma},  {"Delta", d.Delta},
            {"b", d.b},                  {"c", d.c},          {"lambda", d.lambda},
            {"M", d.M}};
  if (d.kind == DitherKind::kBbit) {
    j["k"] = d.k;
    j["tau"] = d.tau;
    j["active_width_B0"] = d.active_width_B0;
    j["base_kind"] = to_string(d.base_kind);
    j["base_Delta"] = d.base_Delta;
  }
  return j;
}

DitherSpec dither_from_json(const Json& j) {
  try {
    const DitherKind kind = dither_kind_from_string(j.at("kind").get<std::string>());
    const double gamma = j.at("gamma").get<double>();
    const double lambda = j.at("lambda").get<double>();
    if (kind == DitherKind::kCosine) return make_cosine_dither(gamma, lambda);
    if (kind == DitherKind::kTriangular) return make_triangular_dither(gamma, lambda);
    const DitherKind base_kind =
        dither_kind_from_string(j.at("base_kind").get<std::string>());
    const DitherSpec base = base_kind == DitherKind::kCosine
                                ? make_cosine_dither(gamma, lambda)
                                : make_triangular_dither(gamma, lambda);
    return make_bbit_dither(base, j.at("b").get<int>(), j.at("k").get<int>(),
                            j.at("c").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed dither document: ") + e.what());
  }
}

Json to_json(const DitherReport& r) {
  Json props = Json::array();
  for (const PropertyCheck& p : r.properties) {
    props.push_back({{"name", p.name},
                     {"passed", p.passed},
                     {"witness_t", p.witness_t},
                     {"witness_value", p.witness_value}});
  }
  return {{"all_passed", r.all_passed()},
          {"measured_Delta", r.measured_Delta},
          {"properties", props}};
}

Json to_json(const RateDistortionPoint& p) {
  return {{"scheme", to_string(p.scheme)}, {"k", p.k},
          {"b", p.b},                      {"N", p.N},
          {"L", p.L},                      {"Lprime", p.Lprime},
          {"R", p.R},                      {"R_NQ", p.R_NQ},
          {"R_net", p.R_net},              {"R_sensor", p.R_sensor},
          {"D", p.D},                      {"D_max", p.D_max},
          {"trials", p.trials}};
}

void write_rd_csv(std::ostream& os, const std::vector<RateDistortionPoint>& points) {
  CsvWriter csv(os, {"scheme", "k", "b", "N", "L", "Lprime", "R", "R_NQ", "R_net",
                     "R_sensor", "D", "D_max", "trials"});
  for (const auto& p : points) {
    csv << to_string(p.scheme) << p.k << p.b << p.N << p.L << p.Lprime << p.R
        << p.R_NQ << p.R_net << p.R_sensor << p.D << p.D_max << p.trials;
    csv.end_row();
  }
}

void write_reconstruction_csv(std::ostream& os, const BandlimitedField& field,
                              const ReconstructionResult& r) {
  CsvWriter csv(os, {"t", "f_true", "f_hat", "abs_err"});
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    const double truth = field(r.grid[i]);
    csv << r.grid[i] << truth << r.values[i] << std::abs(truth - r.values[i]);
    csv.end_row();
  }
}

Json reconstruction_summary(const ReconstructionResult& r) {
  Json lq = Json::object();
  for (const auto& [q, v] : r.lq_errors) lq[format_double(q)] = v;
  Json j = {{"engine", r.engine},
            {"region", region_json(r.region)},
            {"sup_error", r.sup_error},
            {"lq_errors", lq}};
  if (!std::isnan(r.fitted_C)) j["fitted_C"] = r.fitted_C;
  if (r.engine == "least_squares") {
    j["residual"] = r.residual;
    j["regularized"] = r.regularized;
  }
  return j;
}

PackedMatrix pack_signs(const SignMatrix& s) {
  PackedMatrix m;
  m.rows = static_cast<std::uint32_t>(s.rows());
  m.cols = static_cast<std::uint32_t>(s.cols());
  m.bits = 1;
  m.values.reserve(s.data.size());
  for (std::int8_t v : s.data) m.values.push_back(v > 0 ? 1u : 0u);
  return m;
}

PackedMatrix pack_indices(const IndexMatrix& s, int b) {
  require(b >= 1 && b <= 16, "packed indices need 1 <= b <= 16");
  const int M = 1 << (b - 1);
  PackedMatrix m;
  m.rows = static_cast<std::uint32_t>(s.rows());
  m.cols = static_cast<std::uint32_t>(s.cols());
  m.bits = static_cast<std::uint8_t>(b);
  m.values.reserve(s.data.size());
  for (std::int32_t v : s.data) {
    require(v >= -M && v < M, "cell index outside the b-bit range");
    m.values.push_back(static_cast<std::uint32_t>(v + M));
  }
  return m;
}

void write_packed(std::ostream& os, const PackedMatrix& m) {
  require(m.bits >= 1 && m.bits <= 32, "packed entries need 1..32 bits");
  require(m.values.size() == static_cast<std::size_t>(m.rows) * m.cols,
          "packed matrix size mismatch");
  os.write(kPackedMagic.data(), kPackedMagic.size());
  put_u32(os, m.rows);
  put_u32(os, m.cols);
  os.put(static_cast<char>(m.bits));
  const std::size_t total_bits = m.values.size() * m.bits;
  std::vector<std::uint8_t> bytes((total_bits + 7) / 8, 0);
  std::size_t pos = 0;
  for (std::uint32_t v : m.values) {
    for (int i = 0; i < m.bits; ++i, ++pos) {
      if ((v >> i) & 1u) bytes[pos / 8] |= static_cast<std::uint8_t>(1u << (pos % 8));
    }
  }
  os.write(reinterpret_cast<const char*>(bytes.data()),
           static_cast<std::streamsize>(bytes.size()));
}

PackedMatrix read_packed(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), 4) || magic != kPackedMagic) {
    throw ParameterError("not a packed sensor matrix");
  }
  PackedMatrix m;
  m.rows = get_u32(is);
  m.cols = get_u32(is);
  const int bits = is.get();
  require(bits >= 1 && bits <= 32, "packed entries need 1..32 bits");
  m.bits = static_cast<std::uint8_t>(bits);
  const std::size_t count = static_cast<std::size_t>(m.rows) * m.cols;
  std::vector<std::uint8_t> bytes((count * m.bits + 7) / 8);
  if (!is.read(reinterpret_cast<char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()))) {
    throw ParameterError("truncated packed matrix");
  }
  m.values.resize(count);
  std::size_t pos = 0;
  for (std::uint32_t& v : m.values) {
    v = 0;
    for (int i = 0; i < m.bits; ++i, ++pos) {
      if ((bytes[pos / 8] >> (pos % 8)) & 1u) v |= 1u << i;
    }
  }
  return m;
}

void write_blob(std::ostream& os, const EncodedStream& s) {
  require(s.bit_length <= 0xffffffffu, "blob too large");
  put_u32(os, static_cast<std::uint32_t>(s.bit_length));
  os.write(reinterpret_cast<const char*>(s.bytes.data()),
           static_cast<std::streamsize>((s.bit_length + 7) / 8));
}

EncodedStream read_blob(std::istream& is) {
  EncodedStream s;
  s.bit_length = get_u32(is);
  s.bytes.resize((s.bit_length + 7) / 8);
  if (!is.read(reinterpret_cast<char*>(s.bytes.data()),
               static_cast<std::streamsize>(s.bytes.size()))) {
    throw ParameterError("truncated blob");
  }
  s.symbols = decode_run_length(s.bytes, s.bit_length).size();
  return s;
}

}  // namespace distsamp
