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

#ifndef MATLINK_EXTENSION_HPP_
#define MATLINK_EXTENSION_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "matlink/matroid.hpp"

namespace matlink {

// All (q^k - 1)/(q - 1) points of PG(k-1, q) as the columns of a k×s matrix.
// Each column has first nonzero entry 1; columns are ordered by the position
// of that entry, then lexicographically by element code.
Matrix pg_points(std::size_t k, const FieldPtr& field);

// Canonical basis (columns) of <A> ∩ <E - A>; its width is lambda(A).
Matrix guts_basis(const RepMatroid& m, const Separation& sep);
Matrix guts_basis(const RepMatroid& m, Mask a);

// M with a copy of PG(k-1, q) added inside the guts of (A, E - A).
struct PgExtension {
  RepMatroid base;
  Separation sep;
  std::vector<Label> x;   // fresh labels <prefix>_0 .. <prefix>_{s-1}
  Matrix points;          // ambient columns, one per label of x
  RepMatroid extended;    // base columns followed by x
};

PgExtension extend_guts(const RepMatroid& m, const Separation& sep, const std::string& prefix);

// The image of a guts point in F^r / <D[C]>, written in the coordinates of a
// complement spanned by unit vectors (added greedily by index) and scaled so
// that its first nonzero coordinate is 1. `scale` carries the column to a
// vector whose image is exactly `coords`.
struct GutsLabel {
  Label label;
  std::vector<Scalar> coords;
  Scalar scale;
};

// One entry per element of ext.x, in the same order. Throws DegenerateQuotient
// when a point vanishes in the quotient or two points become parallel.
std::vector<GutsLabel> canonical_guts_labels(const RepMatroid& m, const ElementSet& contract,
                                             const PgExtension& ext);

// Adds one point of <S> ∩ <T> (the first canonical basis column) as `label`.
// Throws SkewFlats when the spans meet only in 0.
std::pair<RepMatroid, Label> good_extension(const RepMatroid& m, const ElementSet& s,
                                            const ElementSet& t, const Label& label);

}  // namespace matlink

#endif  // MATLINK_EXTENSION_HPP_
