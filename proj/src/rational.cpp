#include "salem/rational.hpp"

#include "salem/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace salem {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

BigInt parse_big(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_integer_text(num_text)) {
    throw FormatError("not a rational: '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) return Rational(parse_big(num_text));
  const auto den_text = text.substr(slash + 1);
  if (!is_integer_text(den_text)) {
    throw FormatError("not a rational: '" + std::string(text) + "'");
  }
  const BigInt den = parse_big(den_text);
  if (den == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_big(num_text), den);
}

std::string to_pq_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

BigInt floor_of(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  BigInt q;
  mpz_fdiv_q(q.backend().data(), num.backend().data(), den.backend().data());
  return q;
}

Rational fractional_part(const Rational& value) { return value - Rational(floor_of(value)); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::vector<Rational> read_points(std::istream& in) {
  std::vector<Rational> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    try {
      points.push_back(parse_rational(std::string_view(line).substr(first, last - first + 1)));
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return points;
}

std::vector<Rational> load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_points(in);
}

void write_points(std::ostream& out, const std::vector<Rational>& points) {
  for (const auto& x : points) out << to_pq_string(x) << '\n';
}

std::string format_points(const std::vector<Rational>& points) {
  std::ostringstream out;
  write_points(out, points);
  return out.str();
}

}  // namespace salem
