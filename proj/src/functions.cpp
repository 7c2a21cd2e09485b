#include "stripcalc/functions.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "stripcalc/rational.hpp"

namespace stripcalc {

namespace {

struct ParsedId {
  std::string kind;
  std::vector<double> args;
};

ParsedId parse_id(const std::string& id) {
  ParsedId out;
  auto colon = id.find(':');
  out.kind = id.substr(0, colon);
  if (colon == std::string::npos) return out;
  std::stringstream ss(id.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.args.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw DomainError("bad number '" + tok + "' in function id " + id);
    } catch (const std::logic_error&) {
      throw DomainError("bad number '" + tok + "' in function id " + id);
    }
  }
  return out;
}

void need_args(const ParsedId& p, std::size_t lo, std::size_t hi, const std::string& id) {
  require(p.args.size() >= lo && p.args.size() <= hi, "wrong number of parameters in function id " + id);
}

const std::vector<std::string> kKinds = {"one",  "exp_group", "resolvent", "decay_pow",
                                         "pole", "exp_decay", "blaschke",  "pade_err"};

}  // namespace

cplx strip_to_disk(cplx z, double omega) { return std::tanh(pi * z / (4 * omega)); }

std::vector<std::string> registered_function_kinds() { return kKinds; }

bool is_registered_function(const std::string& id) {
  auto k = id.substr(0, id.find(':'));
  return std::find(kKinds.begin(), kKinds.end(), k) != kKinds.end();
}

StripFunction make_strip_function(const std::string& id, double omega) {
  require(omega > 0, "strip half-width must be positive");
  ParsedId p = parse_id(id);
  StripFunction f;
  f.omega = omega;
  f.name = id;
  const auto& a = p.args;
  if (p.kind == "one") {
    need_args(p, 0, 0, id);
    f.eval = [](cplx) { return cplx(1); };
    f.sup_norm = 1;
  } else if (p.kind == "exp_group") {
    need_args(p, 1, 1, id);
    double t = a[0];
    f.eval = [t](cplx z) { return std::exp(-I1 * z * t); };
    f.sup_norm = std::exp(std::abs(t) * omega);
  } else if (p.kind == "resolvent") {
    need_args(p, 1, 1, id);
    double l = a[0];
    require(l > omega, "resolvent: lambda must exceed omega");
    f.eval = [l](cplx z) { return 1.0 / (I1 * l - z); };
    f.sup_norm = 1 / (l - omega);
    f.alpha = 1;
  } else if (p.kind == "decay_pow") {
    need_args(p, 2, 2, id);
    double al = a[0], l = a[1];
    require(l > omega, "decay_pow: lambda must exceed omega");
    require(al > 0, "decay_pow: alpha must be positive");
    f.eval = [al, l](cplx z) { return std::pow(l + I1 * z, -al); };
    f.sup_norm = std::pow(l - omega, -al);
    f.alpha = al;
  } else if (p.kind == "pole") {
    need_args(p, 2, 2, id);
    double c = a[0];
    int m = static_cast<int>(a[1]);
    require(c > omega, "pole: c must exceed omega");
    require(m >= 1 && m == a[1], "pole: order must be a positive integer");
    f.eval = [c, m](cplx z) { return std::pow(I1 * c - z, -m); };
    f.sup_norm = std::pow(c - omega, -m);
    f.alpha = m;
  } else if (p.kind == "exp_decay") {
    need_args(p, 3, 3, id);
    double al = a[0], l = a[1], s = a[2];
    require(l > omega, "exp_decay: lambda must exceed omega");
    require(al > 0, "exp_decay: alpha must be positive");
    f.eval = [al, l, s](cplx z) { return std::exp(-I1 * z * s) * std::pow(l + I1 * z, -al); };
    f.sup_norm = std::exp(std::abs(s) * omega) * std::pow(l - omega, -al);
    f.alpha = al;
  } else if (p.kind == "blaschke") {
    need_args(p, 1, 2, id);
    int count = static_cast<int>(a[0]);
    require(count >= 1 && count <= 64, "blaschke: count must lie in [1, 64]");
    std::mt19937_64 g(a.size() > 1 ? static_cast<std::uint64_t>(a[1]) : 1);
    std::uniform_real_distribution<double> U(0, 1);
    std::vector<cplx> zeros;
    for (int k = 0; k < count; ++k) zeros.push_back(std::polar(0.9 * std::sqrt(U(g)), 2 * pi * U(g)));
    f.eval = [zeros, omega](cplx z) {
      cplx w = strip_to_disk(z, omega), b = 1;
      for (cplx c : zeros) b *= (w - c) / (1.0 - std::conj(c) * w);
      return b;
    };
    f.sup_norm = 1;
  } else if (p.kind == "pade_err") {
    need_args(p, 3, 4, id);
    int n = static_cast<int>(a[0]);
    double ea = a[1], t = a[2], shift = a.size() > 3 ? a[3] : omega;
    require(n >= 0 && n == a[0], "pade_err: n must be a nonnegative integer");
    require(ea > 0 && t > 0 && shift > 0, "pade_err: a, t and shift must be positive");
    require(omega <= shift, "pade_err: strip must lie in the image of the right half-plane");
    auto r = std::make_shared<RationalFunction>(pade_subdiagonal(n));
    f.eval = [r, ea, t, shift](cplx z) {
      cplx w = I1 * z + shift;
      return ((*r)(-t * w) - std::exp(-t * w)) * std::pow(w, -ea);
    };
    f.alpha = ea;
  } else {
    throw DomainError("unknown strip function '" + p.kind + "'");
  }
  return f;
}

}  // namespace stripcalc
