#include "salem/integer_set.hpp"

#include "salem/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace salem {

IntegerSet::IntegerSet(std::vector<std::int64_t> elements, std::int64_t horizon)
    : elements_(std::move(elements)), horizon_(horizon) {
  if (horizon_ < 1) throw std::invalid_argument("IntegerSet: horizon must be positive");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] < 0) throw std::invalid_argument("IntegerSet: negative element");
    if (elements_[i] >= horizon_) {
      throw std::invalid_argument("IntegerSet: element " + std::to_string(elements_[i]) +
                                  " not below horizon " + std::to_string(horizon_));
    }
    if (i > 0 && elements_[i] <= elements_[i - 1]) {
      throw std::invalid_argument("IntegerSet: elements not strictly increasing");
    }
  }
}

IntegerSet IntegerSet::from_unsorted(std::vector<std::int64_t> values, std::int64_t horizon) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (horizon == 0) horizon = values.empty() ? 1 : values.back() + 1;
  return IntegerSet(std::move(values), horizon);
}

bool IntegerSet::contains(std::int64_t n) const {
  return std::binary_search(elements_.begin(), elements_.end(), n);
}

std::int64_t IntegerSet::count_below(std::int64_t n) const {
  return std::lower_bound(elements_.begin(), elements_.end(), n) - elements_.begin();
}

IntegerSet IntegerSet::truncated(std::int64_t n) const {
  const auto end = std::lower_bound(elements_.begin(), elements_.end(), n);
  return IntegerSet(std::vector<std::int64_t>(elements_.begin(), end), n);
}

MembershipIndex::MembershipIndex(const IntegerSet& set) : set_(&set), horizon_(set.horizon()) {
  constexpr std::int64_t kBitmapLimit = std::int64_t{1} << 28;
  if (horizon_ <= kBitmapLimit) {
    bits_.assign(static_cast<std::size_t>(horizon_), false);
    for (auto e : set.elements()) bits_[static_cast<std::size_t>(e)] = true;
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& s, std::size_t line_no) {
  std::int64_t v = 0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw FormatError("line " + std::to_string(line_no) + ": not an integer: '" + s + "'");
  }
  return v;
}

}  // namespace

IntegerSet read_integer_set(std::istream& in) {
  std::vector<std::int64_t> values;
  std::int64_t horizon = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto pos = t.find("horizon=");
      if (line_no == 1 && pos != std::string::npos) {
        horizon = parse_int(trim(t.substr(pos + 8)), line_no);
        if (horizon < 1) throw FormatError("horizon must be positive");
        continue;
      }
      throw FormatError("line " + std::to_string(line_no) + ": unexpected comment");
    }
    const auto v = parse_int(t, line_no);
    if (v < 0) throw FormatError("line " + std::to_string(line_no) + ": negative value");
    if (!values.empty() && v <= values.back()) {
      throw FormatError("line " + std::to_string(line_no) + ": duplicate or decreasing value " +
                        std::to_string(v));
    }
    values.push_back(v);
  }
  if (horizon == 0) horizon = values.empty() ? 1 : values.back() + 1;
  if (!values.empty() && values.back() >= horizon) {
    throw FormatError("value " + std::to_string(values.back()) + " not below declared horizon");
  }
  return IntegerSet(std::move(values), horizon);
}

IntegerSet load_integer_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_integer_set(in);
}

void write_integer_set(std::ostream& out, const IntegerSet& set) {
  out << "# horizon=" << set.horizon() << '\n';
  for (auto e : set.elements()) out << e << '\n';
}

std::string format_integer_set(const IntegerSet& set) {
  std::ostringstream os;
  write_integer_set(os, set);
  return os.str();
}

}  // namespace salem
