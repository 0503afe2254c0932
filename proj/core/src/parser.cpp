#include "realrad/polysys.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace realrad {

namespace {

struct Cursor {
  const std::string& s;
  size_t pos = 0;
  int line_no = 1;

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "line " << line_no << ", column " << pos + 1 << ": " << what;
    throw std::runtime_error(os.str());
  }
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() const { return pos >= s.size(); }
  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
};

bool starts_number(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }

double parse_number(Cursor& c) {
  double value = 0.0;
  const char* begin = c.s.data() + c.pos;
  const char* end = c.s.data() + c.s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr == begin) c.fail("expected a number");
  c.pos += static_cast<size_t>(ptr - begin);
  return value;
}

int parse_int(Cursor& c, const char* what) {
  int value = 0;
  const char* begin = c.s.data() + c.pos;
  const char* end = c.s.data() + c.s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr == begin) c.fail(std::string("expected ") + what);
  c.pos += static_cast<size_t>(ptr - begin);
  return value;
}

// factor := x<i> [^<e>]
void parse_factor(Cursor& c, int n, std::vector<int>& exps) {
  if (c.peek() != 'x') c.fail("expected a variable factor like x1");
  ++c.pos;
  size_t idx_col = c.pos;
  int idx = parse_int(c, "a variable index after 'x'");
  if (idx < 1) {
    c.pos = idx_col;
    c.fail("variable indices start at 1");
  }
  if (idx > n) {
    c.pos = idx_col;
    c.fail("variable index exceeds the declared variable count");
  }
  int e = 1;
  if (c.peek() == '^') {
    ++c.pos;
    size_t exp_col = c.pos;
    e = parse_int(c, "an exponent after '^'");
    if (e < 0) {
      c.pos = exp_col;
      c.fail("exponents must be nonnegative");
    }
  }
  exps[static_cast<size_t>(idx - 1)] += e;
}

// term := [coef] ['*'] factor... | coef
Polynomial parse_term(Cursor& c, int n, double sign) {
  double coef = 1.0;
  bool saw_coef = false;
  if (starts_number(c.peek())) {
    coef = parse_number(c);
    saw_coef = true;
  }
  std::vector<int> exps(static_cast<size_t>(n), 0);
  bool saw_factor = false;
  for (;;) {
    c.skip_ws();
    if (c.peek() == '*') {
      ++c.pos;
      c.skip_ws();
      if (c.peek() != 'x') c.fail("expected a variable factor after '*'");
    }
    if (c.peek() != 'x') break;
    parse_factor(c, n, exps);
    saw_factor = true;
  }
  if (!saw_coef && !saw_factor) c.fail("expected a term");
  Polynomial p(n);
  p.add_term(Monomial(std::move(exps)), sign * coef);
  return p;
}

Polynomial parse_poly_line(const std::string& line, int n, int line_no) {
  Cursor c{line, 0, line_no};
  c.skip_ws();
  Polynomial p(n);
  double sign = 1.0;
  if (c.peek() == '+' || c.peek() == '-') {
    sign = c.peek() == '-' ? -1.0 : 1.0;
    ++c.pos;
    c.skip_ws();
  }
  p = p + parse_term(c, n, sign);
  for (;;) {
    c.skip_ws();
    if (c.done()) break;
    char op = c.peek();
    if (op != '+' && op != '-') c.fail("expected '+', '-', or end of line");
    ++c.pos;
    c.skip_ws();
    p = p + parse_term(c, n, op == '-' ? -1.0 : 1.0);
  }
  return p;
}

std::string strip_comment(const std::string& line) {
  size_t h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

bool blank(const std::string& line) {
  for (char ch : line)
    if (ch != ' ' && ch != '\t' && ch != '\r') return false;
  return true;
}

// returns the declared count, or 0 when the line is not a header
int parse_header(const std::string& line, int line_no) {
  Cursor c{line, 0, line_no};
  c.skip_ws();
  if (c.s.compare(c.pos, 5, "vars:") != 0) {
    if (c.s.compare(c.pos, 4, "vars") == 0) c.fail("expected ':' after 'vars'");
    return 0;
  }
  c.pos += 5;
  c.skip_ws();
  int n = parse_int(c, "a variable count after 'vars:'");
  if (n < 1) c.fail("variable count must be positive");
  c.skip_ws();
  if (!c.done()) c.fail("unexpected trailing text after the vars header");
  return n;
}

// largest x<i> index appearing anywhere; used when no header fixes n
int scan_max_index(const std::string& line) {
  int best = 0;
  for (size_t i = 0; i + 1 < line.size(); ++i) {
    if (line[i] != 'x') continue;
    size_t j = i + 1;
    int v = 0;
    while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) {
      v = v * 10 + (line[j] - '0');
      ++j;
    }
    if (j > i + 1) best = std::max(best, v);
  }
  return best;
}

}  // namespace

Polynomial parse_polynomial(const std::string& line, int n) {
  return parse_poly_line(strip_comment(line), n, 1);
}

PolySystem parse_system(const std::string& text) {
  std::vector<std::pair<int, std::string>> lines;  // (line number, stripped text)
  {
    std::istringstream is(text);
    std::string raw;
    int no = 0;
    while (std::getline(is, raw)) {
      ++no;
      std::string body = strip_comment(raw);
      if (!body.empty() && body.back() == '\r') body.pop_back();
      if (!blank(body)) lines.emplace_back(no, body);
    }
  }
  if (lines.empty()) throw std::runtime_error("no polynomials in input");

  int n = parse_header(lines.front().second, lines.front().first);
  size_t first_poly = 0;
  if (n > 0) {
    first_poly = 1;
  } else {
    for (const auto& [no, body] : lines) n = std::max(n, scan_max_index(body));
    if (n == 0)
      throw std::runtime_error("no variables found; add a 'vars: <n>' header or use x<i> factors");
  }
  if (first_poly >= lines.size())
    throw std::runtime_error("no polynomials after the vars header");

  PolySystem ps(n);
  for (size_t k = first_poly; k < lines.size(); ++k)
    ps.push_back(parse_poly_line(lines[k].second, n, lines[k].first));
  return ps;
}

PolySystem parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_monomial(const Monomial& m) {
  std::string out;
  for (int i = 0; i < m.var_count(); ++i) {
    int e = m.exponent(i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x';
    out += std::to_string(i + 1);
    if (e > 1) {
      out += '^';
      out += std::to_string(e);
    }
  }
  return out;
}

}  // namespace

std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  // highest degree first reads most naturally
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    double a = std::abs(c);
    bool neg = c < 0.0 || (c == 0.0 && std::signbit(c));
    if (out.empty()) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono = format_monomial(m);
    if (mono.empty()) {
      out += format_number(a);
    } else if (a == 1.0) {
      out += mono;
    } else {
      out += format_number(a);
      out += '*';
      out += mono;
    }
  }
  return out;
}

std::string format_system(const PolySystem& ps) {
  std::string out = "vars: " + std::to_string(ps.var_count()) + "\n";
  for (const auto& p : ps.polynomials()) {
    out += format_polynomial(p);
    out += '\n';
  }
  return out;
}

}  // namespace realrad
