// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "matlink/extension.hpp"

#include "matlink/errors.hpp"

namespace matlink {

namespace {

void require_finite(const FieldPtr& field) {
  if (!field->is_finite()) {
    throw Error(ErrorCode::kInfiniteField, "projective geometry needs a finite field");
  }
}

std::vector<std::size_t> columns_of(const RepMatroid& m, Mask x) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if ((x >> j) & 1) out.push_back(j);
  }
  return out;
}

RepMatroid append_columns(const RepMatroid& m, const Matrix& cols, const std::vector<Label>& names) {
  for (const auto& name : names) {
    if (m.contains(name)) {
      throw Error(ErrorCode::kLabelCollision, "label '" + name + "' already in use");
    }
  }
  std::vector<Label> labels = m.labels();
  labels.insert(labels.end(), names.begin(), names.end());
  return RepMatroid(m.matrix().hconcat(cols), std::move(labels));
}

}  // namespace

Matrix pg_points(std::size_t k, const FieldPtr& field) {
  require_finite(field);
  const std::uint32_t q = field->order();
  std::vector<std::vector<std::uint32_t>> points;
  for (std::size_t lead = 0; lead < k; ++lead) {
    const std::size_t tail = k - lead - 1;
    std::vector<std::uint32_t> rest(tail, 0);
    while (true) {
      std::vector<std::uint32_t> v(k, 0);
      v[lead] = 1;
      for (std::size_t i = 0; i < tail; ++i) v[lead + 1 + i] = rest[i];
      points.push_back(std::move(v));
      std::size_t i = tail;
      while (i > 0 && ++rest[i - 1] == q) rest[--i] = 0;
      if (i == 0) break;
    }
  }
  Matrix out(field, k, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t i = 0; i < k; ++i) out.set_code(i, j, points[j][i]);
  }
  return out;
}

Matrix guts_basis(const RepMatroid& m, Mask a) {
  const auto left = columns_of(m, a);
  const auto right = columns_of(m, m.ground() & ~a);
  const Matrix basis = subspace_intersect(m.matrix().select_columns(left),
                                          m.matrix().select_columns(right));
  if (basis.cols() != m.lambda(a)) internal_error("guts dimension differs from lambda");
  return basis;
}

Matrix guts_basis(const RepMatroid& m, const Separation& sep) {
  check_separation(m, sep);
  return guts_basis(m, m.mask_of(sep.side_a));
}

PgExtension extend_guts(const RepMatroid& m, const Separation& sep, const std::string& prefix) {
  require_finite(m.field());
  const Matrix basis = guts_basis(m, sep);
  const Matrix points = multiply(basis, pg_points(basis.cols(), m.field()));
  std::vector<Label> names;
  for (std::size_t j = 0; j < points.cols(); ++j) names.push_back(prefix + "_" + std::to_string(j));
  RepMatroid extended = append_columns(m, points, names);
  return PgExtension{m, sep, std::move(names), points, std::move(extended)};
}

std::vector<GutsLabel> canonical_guts_labels(const RepMatroid& m, const ElementSet& contract,
                                             const PgExtension& ext) {
  const FieldPtr& field = m.field();
  const std::size_t r = m.matrix().rows();
  const Matrix c_basis = column_space_basis(m.matrix().select_columns(columns_of(m, m.mask_of(contract))));

  // Complete a basis of <C> with unit vectors, lowest index first.
  Matrix frame = c_basis;
  std::size_t rank_so_far = c_basis.cols();
  for (std::size_t i = 0; i < r && rank_so_far < r; ++i) {
    Matrix unit(field, r, 1);
    unit.set(i, 0, Scalar::one(field));
    Matrix candidate = frame.hconcat(unit);
    if (rank(candidate) > rank_so_far) {
      frame = std::move(candidate);
      ++rank_so_far;
    }
  }
  const std::size_t offset = c_basis.cols();

  std::vector<GutsLabel> out;
  for (std::size_t j = 0; j < ext.x.size(); ++j) {
    const auto column = ext.points.column(j);
    const auto solved = solve_membership(frame, column);
    if (!solved) internal_error("quotient frame does not span the ambient space");
    std::vector<Scalar> coords(solved->begin() + static_cast<std::ptrdiff_t>(offset), solved->end());
    std::size_t lead = 0;
    while (lead < coords.size() && coords[lead].is_zero()) ++lead;
    if (lead == coords.size()) {
      throw Error(ErrorCode::kDegenerateQuotient,
                  "guts point '" + ext.x[j] + "' lies in the span of the contracted set");
    }
    const Scalar scale = Scalar::one(field) / coords[lead];
    for (auto& c : coords) c = c * scale;
    for (const auto& prior : out) {
      if (prior.coords == coords) {
        throw Error(ErrorCode::kDegenerateQuotient,
                    "guts points '" + prior.label + "' and '" + ext.x[j] + "' become parallel");
      }
    }
    out.push_back(GutsLabel{ext.x[j], std::move(coords), scale});
  }
  return out;
}

std::pair<RepMatroid, Label> good_extension(const RepMatroid& m, const ElementSet& s,
                                            const ElementSet& t, const Label& label) {
  const Mask cs = m.closure(m.mask_of(s));
  const Mask ct = m.closure(m.mask_of(t));
  const Matrix meet = subspace_intersect(m.matrix().select_columns(columns_of(m, cs)),
                                         m.matrix().select_columns(columns_of(m, ct)));
  if (meet.cols() == 0) throw Error(ErrorCode::kSkewFlats, "the closures of S and T are skew");
  const std::vector<std::size_t> first{0};
  RepMatroid out = append_columns(m, meet.select_columns(first), {label});

  const std::size_t e = out.index_of(label);
  const Mask eb = Mask{1} << e;
  if (out.rank(eb) != 1 || (out.closure(cs) & eb) == 0 || (out.closure(ct) & eb) == 0) {
    internal_error("good extension point misses the closures");
  }
  return {std::move(out), label};
}

}  // namespace matlink
