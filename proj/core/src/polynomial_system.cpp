#include "sidon/attacks/polynomial_system.hpp"

#include <algorithm>
#include <charconv>
#include <memory>
#include <sstream>
#include <unordered_map>

namespace sidon::attacks {

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::uint32_t monomial_degree(const Monomial& m) {
  std::uint32_t d = 0;
  for (const auto& [var, exp] : m) d += exp;
  return d;
}

void SparsePolynomial::add_term(const Monomial& m, Coeff c, const ff::PrimeField& f) {
  c = f.scalar(c);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second = f.add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

std::uint32_t SparsePolynomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& [mono, coef] : terms_) d = std::max(d, monomial_degree(mono));
  return d;
}

std::uint32_t PolynomialSystem::degree() const {
  std::uint32_t d = 0;
  for (const auto& e : equations) d = std::max(d, e.degree());
  return d;
}

std::size_t PolynomialSystem::index_of(std::string_view name) const {
  const auto it = std::find(variables.begin(), variables.end(), name);
  if (it == variables.end()) throw InputError("unknown variable '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - variables.begin());
}

std::string to_text(const PolynomialSystem& sys) {
  std::ostringstream out;
  out << "# q=" << sys.q << " k=" << sys.k << " vars=" << sys.variables.size() << " eqs=" << sys.equations.size()
      << "\n# vars:";
  for (const auto& v : sys.variables) out << ' ' << v;
  out << '\n';
  for (const auto& eq : sys.equations) {
    if (eq.is_zero()) {
      out << "0 = 0\n";
      continue;
    }
    bool first = true;
    for (const auto& [mono, coef] : eq.terms()) {
      if (!first) out << " + ";
      first = false;
      out << coef;
      for (const auto& [var, exp] : mono) {
        out << '*' << sys.variables[var];
        if (exp > 1) out << '^' << exp;
      }
    }
    out << " = 0\n";
  }
  return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s, const char* what) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw InputError(std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> parts;
  for (;;) {
    const auto pos = s.find(sep);
    parts.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return parts;
    s.remove_prefix(pos + sep.size());
  }
}

}  // namespace

PolynomialSystem parse_system(std::string_view text) {
  PolynomialSystem sys;
  std::size_t declared_vars = 0;
  std::size_t declared_eqs = 0;
  bool have_header = false;
  bool have_vars = false;
  std::unordered_map<std::string, std::uint32_t> index;
  std::unique_ptr<ff::PrimeField> field;

  for (std::string_view line : split(text, "\n")) {
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line = trim(line.substr(1));
      if (line.starts_with("vars:")) {
        std::istringstream names{std::string(line.substr(5))};
        for (std::string name; names >> name;) {
          if (!index.emplace(name, static_cast<std::uint32_t>(sys.variables.size())).second) {
            throw InputError("duplicate variable '" + name + "'");
          }
          sys.variables.push_back(name);
        }
        have_vars = true;
      } else if (line.starts_with("q=")) {
        for (auto field_text : split(line, " ")) {
          const auto eq = field_text.find('=');
          if (eq == std::string_view::npos) continue;
          const auto key = field_text.substr(0, eq);
          const auto value = field_text.substr(eq + 1);
          if (key == "q") sys.q = static_cast<std::uint32_t>(parse_uint(value, "q"));
          if (key == "k") sys.k = parse_uint(value, "k");
          if (key == "vars") declared_vars = parse_uint(value, "vars");
          if (key == "eqs") declared_eqs = parse_uint(value, "eqs");
        }
        if (sys.q > ff::PrimeField::kMaxModulus) throw InputError("q is too large");
        field = std::make_unique<ff::PrimeField>(sys.q);
        have_header = true;
      }
      continue;
    }
    if (!have_header || !have_vars) throw InputError("equation before the header lines");
    const auto sides = split(line, "=");
    if (sides.size() != 2 || trim(sides[1]) != "0") throw InputError("equation must end in '= 0'");
    SparsePolynomial poly;
    const auto lhs = trim(sides[0]);
    if (lhs != "0") {
      for (auto term_text : split(lhs, "+")) {
        const auto factors = split(trim(term_text), "*");
        const auto coef = parse_uint(factors[0], "coefficient");
        if (coef >= sys.q) throw InputError("coefficient outside [0, q)");
        Monomial mono;
        for (std::size_t i = 1; i < factors.size(); ++i) {
          const auto parts = split(trim(factors[i]), "^");
          if (parts.size() > 2) throw InputError("bad power in '" + std::string(factors[i]) + "'");
          const auto it = index.find(std::string(trim(parts[0])));
          if (it == index.end()) throw InputError("unknown variable '" + std::string(parts[0]) + "'");
          const auto exp = parts.size() == 2 ? parse_uint(parts[1], "exponent") : 1;
          if (exp == 0 || exp > 1024) throw InputError("exponent out of range");
          mono = monomial_product(mono, Monomial{{it->second, static_cast<std::uint32_t>(exp)}});
        }
        poly.add_term(mono, static_cast<Coeff>(coef), *field);
      }
    }
    sys.equations.push_back(std::move(poly));
  }
  if (!have_header || !have_vars) throw InputError("missing header lines");
  if (declared_vars != sys.variables.size()) throw InputError("variable count disagrees with the header");
  if (declared_eqs != sys.equations.size()) throw InputError("equation count disagrees with the header");
  return sys;
}

}  // namespace sidon::attacks
