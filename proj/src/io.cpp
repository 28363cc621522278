#include "ucr/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ucr/errors.hpp"

namespace ucr::io {

namespace {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
}

Complex parse_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ParseError("matrix entries must be [re, im] pairs");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

RelationInput read_relation_text(const std::string& text,
                                 double unitarity_tol) {
  const Json j = parse_json(text);
  if (!j.is_object()) throw ParseError("input must be a JSON object");
  if (!j.contains("n") || !j.contains("m")) {
    throw ParseError("input must carry integer fields \"n\" and \"m\"");
  }
  if (!j["n"].is_number_integer() || !j["m"].is_number_integer()) {
    throw ParseError("\"n\" and \"m\" must be integers");
  }
  const int n = j["n"].get<int>();
  const int m = j["m"].get<int>();
  if (n < 1 || m < 1) throw ParseError("\"n\" and \"m\" must be positive");

  if (j.contains("permutation")) {
    if (!j["permutation"].is_string()) {
      throw ParseError("\"permutation\" must be a cycle-notation string");
    }
    const PairPermutation theta =
        parse_cycles(j["permutation"].get<std::string>(), n, m);
    return RelationInput{
        RelationMatrix::validate(n, m, permutation_matrix(theta),
                                 unitarity_tol),
        theta};
  }

  if (!j.contains("u") || !j["u"].is_array()) {
    throw ParseError("input must carry the matrix field \"u\"");
  }
  const auto& rows = j["u"];
  const int d = n * m;
  if (static_cast<int>(rows.size()) != d) {
    throw ParseError("\"u\" must have n*m rows in lexicographic pair order");
  }
  Matrix u(d, d);
  for (int r = 0; r < d; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != d) {
      throw ParseError("row " + std::to_string(r + 1) +
                       " of \"u\" must have n*m entries");
    }
    for (int c = 0; c < d; ++c) {
      u(r, c) = parse_complex(rows[r][c]);
    }
  }
  return RelationInput{RelationMatrix::validate(n, m, u, unitarity_tol),
                       std::nullopt};
}

RelationInput read_relation_file(const std::string& path,
                                 double unitarity_tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_relation_text(buf.str(), unitarity_tol);
}

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json relation_to_json(const RelationMatrix& rel) {
  Json out;
  out["n"] = rel.n();
  out["m"] = rel.m();
  out["u"] = matrix_to_json(rel.matrix());
  return out;
}

PairPermutation parse_cycles(const std::string& text, int n, int m) {
  PairPermutation theta(n * m);
  for (std::size_t p = 0; p < theta.size(); ++p) {
    theta[p] = static_cast<int>(p);
  }
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s == "id" || s == "()" || s.empty()) return theta;

  std::size_t pos = 0;
  auto parse_pair = [&](const std::string& token) {
    if (token.size() != 2 || !std::isdigit(static_cast<unsigned char>(token[0])) ||
        !std::isdigit(static_cast<unsigned char>(token[1]))) {
      throw ParseError("pair token must be two digits, got \"" + token + "\"");
    }
    const int i = token[0] - '0';
    const int j = token[1] - '0';
    if (i < 1 || i > n || j < 1 || j > m) {
      throw ParseError("pair token \"" + token + "\" out of range for n=" +
                       std::to_string(n) + ", m=" + std::to_string(m));
    }
    return (i - 1) * m + (j - 1);
  };

  while (pos < s.size()) {
    if (s[pos] != '(') {
      throw ParseError("expected '(' at position " + std::to_string(pos) +
                       " of cycle string");
    }
    const std::size_t close = s.find(')', pos);
    if (close == std::string::npos) {
      throw ParseError("unbalanced '(' in cycle string");
    }
    std::vector<int> cycle;
    std::string token;
    for (std::size_t t = pos + 1; t <= close; ++t) {
      if (t == close || s[t] == ',') {
        if (!token.empty()) cycle.push_back(parse_pair(token));
        token.clear();
      } else {
        token.push_back(s[t]);
      }
    }
    for (std::size_t t = 0; t + 1 < cycle.size(); ++t) {
      theta[cycle[t]] = cycle[t + 1];
    }
    if (cycle.size() > 1) theta[cycle.back()] = cycle.front();
    pos = close + 1;
  }

  std::vector<bool> seen(theta.size(), false);
  for (int img : theta) {
    if (seen[img]) throw ParseError("cycle string is not a permutation");
    seen[img] = true;
  }
  return theta;
}

std::string format_cycles(const PairPermutation& theta, int n, int m) {
  std::string out;
  std::vector<bool> seen(theta.size(), false);
  for (std::size_t start = 0; start < theta.size(); ++start) {
    if (seen[start] || theta[start] == static_cast<int>(start)) continue;
    out.push_back('(');
    std::size_t cur = start;
    bool first = true;
    while (!seen[cur]) {
      seen[cur] = true;
      if (!first) out.push_back(',');
      first = false;
      out.push_back(static_cast<char>('1' + static_cast<int>(cur) / m));
      out.push_back(static_cast<char>('1' + static_cast<int>(cur) % m));
      cur = theta[cur];
    }
    out.push_back(')');
  }
  return out.empty() ? "id" : out;
}

std::string digest64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace ucr::io
