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

#ifndef MATLINK_IO_HPP_
#define MATLINK_IO_HPP_

#include <string>
#include <string_view>

#include "matlink/matroid.hpp"

namespace matlink {

// Line-oriented matroid files; '#' starts a comment.
//
//   field gf(9) modulus=x^2+1      (or: field gf(5), field rationals)
//   labels a b c d
//   rows 2
//   1 0 1 1
//   0 1 1 x
//
// Throws SyntaxError (with line and column), BadField, DimensionMismatch or
// DuplicateLabel.
RepMatroid parse_matroid(std::string_view text);

// Inverse of parse_matroid: parse_matroid(serialize_matroid(m)) reproduces
// labels, field and entries exactly.
std::string serialize_matroid(const RepMatroid& m);

RepMatroid read_matroid_file(const std::string& path);

// Field from its header spelling: "gf(q)", "gf(q) modulus=<poly>", "rationals".
FieldPtr parse_field(std::string_view text);

}  // namespace matlink

#endif  // MATLINK_IO_HPP_
