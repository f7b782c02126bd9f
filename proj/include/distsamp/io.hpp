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

// Serialization: CSV tables, JSON documents, packed sensor matrices and
// length-prefixed codec blobs. All binary formats are little-endian.

#ifndef DISTSAMP_IO_HPP_
#define DISTSAMP_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "distsamp/coding_net.hpp"
#include "distsamp/dither.hpp"
#include "distsamp/field_model.hpp"
#include "distsamp/reconstruct.hpp"
#include "distsamp/sampler.hpp"
#include "json.hpp"

namespace distsamp {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that round-trips the double.
std::string format_double(double v);

/// Writes "#schema=1", the header line, then rows on demand.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& columns);

  CsvWriter& operator<<(double v);
  CsvWriter& operator<<(int v);
  CsvWriter& operator<<(long v);
  CsvWriter& operator<<(const std::string& v);
  void end_row();

 private:
  void sep();

  std::ostream& os_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

inline constexpr int kCsvSchema = 1;

Json to_json(const FieldParams& p);
FieldParams field_params_from_json(const Json& j);

/// {kind, params, coeffs, seed, ...}; enough to rebuild the field exactly.
Json to_json(const BandlimitedField& f);
BandlimitedField field_from_json(const Json& j);

Json to_json(const DitherSpec& d);
DitherSpec dither_from_json(const Json& j);

Json to_json(const DitherReport& r);
Json to_json(const RateDistortionPoint& p);

/// RateDistortionPoint rows with the header written first.
void write_rd_csv(std::ostream& os, const std::vector<RateDistortionPoint>& points);

/// Columns t, f_true, f_hat, abs_err over the result grid.
void write_reconstruction_csv(std::ostream& os, const BandlimitedField& field,
                              const ReconstructionResult& r);
Json reconstruction_summary(const ReconstructionResult& r);

struct PackedMatrix {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::uint8_t bits = 1;
  // Row-major entries, each < 2^bits.
  std::vector<std::uint32_t> values;

  bool operator==(const PackedMatrix&) const = default;
};

/// +1 -> 1, -1 -> 0.
PackedMatrix pack_signs(const SignMatrix& s);
/// Cell index j in [-M, M-1] stored as j + M in b bits.
PackedMatrix pack_indices(const IndexMatrix& s, int b);

/// "DSPK", u32 rows, u32 cols, u8 bits, then the entries packed with the
/// first entry in the least significant bit of the first byte.
void write_packed(std::ostream& os, const PackedMatrix& m);
PackedMatrix read_packed(std::istream& is);

/// u32 bit length followed by ceil(bits / 8) bytes.
void write_blob(std::ostream& os, const EncodedStream& s);
EncodedStream read_blob(std::istream& is);

}  // namespace distsamp

#endif  // DISTSAMP_IO_HPP_
