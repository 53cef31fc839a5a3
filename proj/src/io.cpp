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

#include "matlink/io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "matlink/errors.hpp"

namespace matlink {

namespace {

struct Token {
  std::string text;
  std::size_t column = 0;  // 1-based
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

[[noreturn]] void syntax_at(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(ErrorCode::kSyntaxError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i == raw.size()) break;
      const std::size_t begin = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back(Token{std::string(raw.substr(begin, i - begin)), begin + 1});
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

std::size_t parse_count(const Token& tok, std::size_t line) {
  if (tok.text.empty() || tok.text.size() > 6) syntax_at(line, tok.column, "expected a row count");
  std::size_t value = 0;
  for (char c : tok.text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      syntax_at(line, tok.column, "expected a row count");
    }
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

void expect_keyword(const Line& line, const char* word) {
  if (line.tokens.front().text != word) {
    syntax_at(line.number, line.tokens.front().column,
              std::string("expected '") + word + "', found '" + line.tokens.front().text + "'");
  }
}

}  // namespace

FieldPtr parse_field(std::string_view text) {
  std::string s(text);
  if (s == "rationals") return FieldSpec::rationals();
  std::string modulus;
  if (const auto space = s.find_first_of(" \t"); space != std::string::npos) {
    std::string rest = s.substr(space);
    s = s.substr(0, space);
    const auto first = rest.find_first_not_of(" \t");
    rest = first == std::string::npos ? "" : rest.substr(first);
    if (rest.rfind("modulus=", 0) != 0) {
      throw Error(ErrorCode::kBadField, "unexpected field option '" + rest + "'");
    }
    modulus = rest.substr(8);
  }
  if (s.size() < 5 || s.rfind("gf(", 0) != 0 || s.back() != ')') {
    throw Error(ErrorCode::kBadField, "unknown field '" + std::string(text) + "'");
  }
  const std::string digits = s.substr(3, s.size() - 4);
  if (digits.empty() || digits.size() > 9 ||
      digits.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::kBadField, "bad field order '" + digits + "'");
  }
  const std::uint64_t q = std::stoull(digits);
  const auto [p, d] = prime_power(q);
  if (p == 0) throw Error(ErrorCode::kBadField, digits + " is not a prime power");
  if (modulus.empty()) return FieldSpec::gf(static_cast<std::uint32_t>(q));
  std::vector<std::uint32_t> poly;
  try {
    poly = parse_polynomial(modulus, p);
  } catch (const Error&) {
    throw Error(ErrorCode::kBadField, "cannot parse modulus '" + modulus + "'");
  }
  if (poly.size() != d + 1) {
    throw Error(ErrorCode::kBadField, "modulus degree must be " + std::to_string(d));
  }
  return FieldSpec::extension(p, poly);
}

RepMatroid parse_matroid(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.size() < 3) {
    const std::size_t at = lines.empty() ? 1 : lines.back().number;
    syntax_at(at, 1, "expected field, labels and rows lines");
  }

  const Line& fl = lines[0];
  expect_keyword(fl, "field");
  if (fl.tokens.size() < 2 || fl.tokens.size() > 3) {
    syntax_at(fl.number, fl.tokens.front().column, "expected 'field <name> [modulus=<poly>]'");
  }
  std::string spelled = fl.tokens[1].text;
  if (fl.tokens.size() == 3) spelled += " " + fl.tokens[2].text;
  const FieldPtr field = parse_field(spelled);

  const Line& ll = lines[1];
  expect_keyword(ll, "labels");
  if (ll.tokens.size() < 2) syntax_at(ll.number, ll.tokens.front().column, "no labels given");
  std::vector<Label> labels;
  std::set<Label> seen;
  for (std::size_t i = 1; i < ll.tokens.size(); ++i) {
    const Token& tok = ll.tokens[i];
    if (tok.text.find(',') != std::string::npos) {
      syntax_at(ll.number, tok.column, "labels may not contain ','");
    }
    if (!seen.insert(tok.text).second) {
      throw Error(ErrorCode::kDuplicateLabel, "line " + std::to_string(ll.number) +
                                                  ": duplicate label '" + tok.text + "'");
    }
    labels.push_back(tok.text);
  }

  const Line& rl = lines[2];
  expect_keyword(rl, "rows");
  if (rl.tokens.size() != 2) syntax_at(rl.number, rl.tokens.front().column, "expected 'rows <r>'");
  const std::size_t rows = parse_count(rl.tokens[1], rl.number);
  if (lines.size() - 3 != rows) {
    throw Error(ErrorCode::kDimensionMismatch, "declared " + std::to_string(rows) +
                                                   " rows, found " +
                                                   std::to_string(lines.size() - 3));
  }

  const std::size_t cols = labels.size();
  Matrix m(field, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Line& line = lines[3 + i];
    if (line.tokens.size() != cols) {
      throw Error(ErrorCode::kDimensionMismatch, "line " + std::to_string(line.number) + ": " +
                                                     std::to_string(line.tokens.size()) +
                                                     " entries for " + std::to_string(cols) +
                                                     " labels");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      try {
        m.set(i, j, Scalar::parse(field, line.tokens[j].text));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kSyntaxError && e.code() != ErrorCode::kDivisionByZero) throw;
        syntax_at(line.number, line.tokens[j].column, e.what());
      }
    }
  }
  return RepMatroid(std::move(m), std::move(labels));
}

std::string serialize_matroid(const RepMatroid& m) {
  std::ostringstream out;
  out << "field " << m.field()->describe() << "\n";
  out << "labels";
  for (const auto& l : m.labels()) out << ' ' << l;
  out << "\nrows " << m.matrix().rows() << "\n";
  for (std::size_t i = 0; i < m.matrix().rows(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j > 0) out << ' ';
      out << m.matrix().at(i, j).to_string();
    }
    out << "\n";
  }
  return out.str();
}

RepMatroid read_matroid_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kSyntaxError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matroid(buf.str());
}

}  // namespace matlink
