#include "parse.hpp"

#include <charconv>
#include <cmath>
#include <regex>
#include <vector>

namespace qwalk::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

long long parse_integer(const std::string& s, std::string_view context) {
  long long v = 0;
  const auto* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("bad integer '" + s + "' in '" + std::string(context) + "'");
  }
  return v;
}

}  // namespace

double parse_real(std::string_view text) {
  const std::string s = trim(text);
  double v = 0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError("bad number '" + s + "'");
  }
  return v;
}

std::complex<double> parse_complex(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw UsageError("empty complex literal");
  if (s.back() != 'i') return {parse_real(s), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the leading one and not an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  const std::string re = cut == std::string::npos ? "" : body.substr(0, cut);
  const std::string im = cut == std::string::npos ? body : body.substr(cut);
  double imag = 0;
  if (im.empty() || im == "+") {
    imag = 1;
  } else if (im == "-") {
    imag = -1;
  } else {
    imag = parse_real(im);
  }
  try {
    return {re.empty() ? 0.0 : parse_real(re), imag};
  } catch (const UsageError&) {
    throw UsageError("bad complex literal '" + s + "'");
  }
}

Angle parse_angle(std::string_view text) {
  const std::string s = trim(text);
  static const std::regex pi_literal(R"(^([+-]?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+))?$)");
  std::smatch m;
  if (std::regex_match(s, m, pi_literal)) {
    const std::string p = m[1].str();
    long long num = 1;
    if (p == "-") {
      num = -1;
    } else if (!p.empty() && p != "+") {
      num = parse_integer(p, s);
    }
    const long long den = m[2].matched ? parse_integer(m[2].str(), s) : 1;
    if (den == 0) throw UsageError("zero denominator in '" + s + "'");
    return Angle::from_pi_fraction(num, den);
  }
  return Angle(parse_real(s));
}

Coin parse_coin(std::string_view text) {
  const std::string s = trim(text);
  if (s == "hadamard") return Coin::hadamard();
  if (s == "identity") return Coin::identity();
  if (s.rfind("rotation:", 0) == 0) return Coin::rotation(parse_angle(s.substr(9)).radians());
  const auto parts = split(s, ',');
  if (parts.size() != 4) {
    throw UsageError("coin must be hadamard, identity, rotation:<angle> or four complex entries, got '" + s + "'");
  }
  return validate_coin(parse_complex(parts[0]), parse_complex(parts[1]), parse_complex(parts[2]),
                       parse_complex(parts[3]));
}

InitialVector parse_phi(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw UsageError("expected two complex entries 'phi1,phi2'");
  return InitialVector(parse_complex(parts[0]), parse_complex(parts[1]));
}

InitSpec parse_init(std::string_view text) {
  const std::string s = trim(text);
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("expected delta:a,b or const:a,b");
  const std::string kind = s.substr(0, colon);
  InitSpec spec;
  if (kind == "delta") {
    spec.kind = InitSpec::Kind::Delta;
  } else if (kind == "const") {
    spec.kind = InitSpec::Kind::Constant;
  } else {
    throw UsageError("unknown initial field kind '" + kind + "'");
  }
  const auto parts = split(std::string_view(s).substr(colon + 1), ',');
  if (parts.size() != 2) throw UsageError("expected two complex entries after '" + kind + ":'");
  spec.left = parse_complex(parts[0]);
  spec.right = parse_complex(parts[1]);
  return spec;
}

std::string format_angle(const Angle& a) {
  if (const auto& f = a.pi_fraction()) {
    if (f->num == 0) return "0";
    std::string out = f->num == 1 ? "pi" : std::to_string(f->num) + "*pi";
    if (f->den != 1) out += "/" + std::to_string(f->den);
    return out;
  }
  return format_real(a.radians());
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace qwalk::cli
