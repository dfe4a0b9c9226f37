#include "taupsd/harness/corpus.hpp"

#include <cmath>
#include <regex>
#include <sstream>

#include "taupsd/errors.hpp"
#include "taupsd/partition.hpp"

namespace taupsd::harness {

const char* to_string(Space s) {
  switch (s) {
    case Space::X: return "X";
    case Space::XStar: return "X*";
    case Space::Phase: return "phase";
  }
  return "?";
}

std::string SymbolRef::text() const {
  if (params.empty()) return family;
  std::ostringstream os;
  os << family << '(';
  bool first = true;
  for (const auto& [k, v] : params) {
    os << (first ? "" : ",") << k << '=' << v;
    first = false;
  }
  os << ')';
  return os.str();
}

double SymbolRef::get(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

SymbolRef parse_symbol_ref(const std::string& text) {
  static const std::regex whole(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\((.*)\))?\s*$)");
  static const std::regex pair(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*=\s*([^,]+?)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, whole)) throw UsageError("symbol reference '" + text + "': bad syntax");
  SymbolRef ref;
  ref.family = m[1];
  const std::string args = m[2];
  if (args.find_first_not_of(" \t") == std::string::npos) return ref;
  std::stringstream ss(args);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::smatch pm;
    if (!std::regex_match(item, pm, pair))
      throw UsageError("symbol reference '" + text + "': expected key=value, got '" + item + "'");
    try {
      std::size_t used = 0;
      const std::string value = pm[2];
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      ref.params[pm[1]] = v;
    } catch (const std::exception&) {
      throw UsageError("symbol reference '" + text + "': parameter '" + std::string(pm[1]) +
                       "' is not a number");
    }
  }
  return ref;
}

const std::vector<CorpusFamily>& corpus() {
  static const std::vector<CorpusFamily> families = {
      {"gauss", "exp(-|z|^2 / (2 sigma^2)); on phase space exp(-(|x|^2+|p|^2) / (2 sigma^2))",
       {{"sigma", 1.0}}, {Space::X, Space::XStar, Space::Phase}},
      {"bracket", "<z>^m; on phase space <x>^m <p>^m", {{"m", -2.0}},
       {Space::X, Space::XStar, Space::Phase}},
      {"window", "Phi(|z|/R), equal to 1 on |z| <= R and 0 on |z| >= 2R; on phase space "
                 "Phi(|x|/R) Phi(|p|/R)",
       {{"R", 4.0}}, {Space::X, Space::XStar, Space::Phase}},
      {"modgauss", "exp(-|z|^2 / (2 sigma^2)) cos(lambda sum z_i); on phase space the "
                   "Gaussian times cos(lambda sum x_i) cos(lambda sum p_i)",
       {{"lambda", 1.0}, {"sigma", 1.0}}, {Space::X, Space::XStar, Space::Phase}},
      {"oscill", "Phi(|x|/R) Phi(|p|/R) exp(i sin(lambda sum x_i) sin(lambda sum p_i))",
       {{"lambda", 1.0}, {"R", 4.0}}, {Space::Phase}},
      {"product", "F^{-1}<.>^{-t} (x) F<.>^{-s} on phase space", {{"t", 2.0}, {"s", 2.0}},
       {Space::Phase}},
      {"borderline", "<z>^{-(n+0.1)}; on phase space the product symbol with s = t = n + 0.1",
       {}, {Space::X, Space::XStar, Space::Phase}},
  };
  return families;
}

std::vector<std::string> corpus_instances() {
  std::vector<std::string> out = {"gauss(sigma=1)", "gauss(sigma=0.5)"};
  for (int m = -5; m <= 2; ++m) out.push_back("bracket(m=" + std::to_string(m) + ")");
  out.insert(out.end(), {"window(R=4)", "modgauss(lambda=1)", "modgauss(lambda=2)",
                         "modgauss(lambda=4)", "modgauss(lambda=8)", "oscill(lambda=1)",
                         "product(t=2,s=2)", "borderline"});
  return out;
}

namespace {

const CorpusFamily& find_family(const SymbolRef& ref) {
  for (const auto& f : corpus())
    if (f.family == ref.family) {
      for (const auto& [k, v] : ref.params)
        if (!f.defaults.count(k))
          throw LookupError("corpus: family '" + f.family + "' has no parameter '" + k + "'");
      return f;
    }
  throw LookupError("corpus: unknown symbol family '" + ref.family + "'");
}

void require_space(const CorpusFamily& f, Space s) {
  for (Space have : f.spaces)
    if (have == s) return;
  throw LookupError("corpus: family '" + f.family + "' is not defined on " + to_string(s));
}

double param(const CorpusFamily& f, const SymbolRef& ref, const std::string& key) {
  return ref.get(key, f.defaults.at(key));
}

Symbol cosine_symbol(double lambda) {
  return Symbol("cos", 0.0, 64, [lambda](const MultiIndex& alpha, const Point& x) -> cplx {
    const int k = order(alpha);
    return std::pow(lambda, k) * std::cos(lambda * x.sum() + k * M_PI / 2.0);
  });
}

Symbol window_symbol(double R) {
  if (!(R > 0.0)) throw DomainError("window: R must be positive");
  const PartitionPair pp = build_partition();
  return Symbol("window", kSchwartzDegree, 0,
                [pp, R](const MultiIndex&, const Point& x) -> cplx { return pp.phi_radial(x.norm() / R); },
                true);
}

}  // namespace

Symbol resolve_symbol(const SymbolRef& ref, Space space, int n) {
  const CorpusFamily& f = find_family(ref);
  require_space(f, space);
  if (f.family == "gauss") return gaussian_symbol(param(f, ref, "sigma"));
  if (f.family == "bracket") return bracket_power_symbol(param(f, ref, "m"));
  if (f.family == "window") return window_symbol(param(f, ref, "R"));
  if (f.family == "modgauss")
    return product(gaussian_symbol(param(f, ref, "sigma")), cosine_symbol(param(f, ref, "lambda")));
  if (f.family == "borderline") return bracket_power_symbol(-(n + 0.1));
  throw LookupError("corpus: family '" + f.family + "' has no resolver on " + to_string(space));
}

Symbol resolve_symbol(const std::string& text, Space space, int n) {
  return resolve_symbol(parse_symbol_ref(text), space, n);
}

PhaseSymbol resolve_phase(const SymbolRef& ref, const Grid& g) {
  const CorpusFamily& f = find_family(ref);
  require_space(f, Space::Phase);
  const int n = g.dim();
  if (f.family == "product")
    return product_phase_symbol(bracket_power_symbol(-param(f, ref, "t")),
                                bracket_power_symbol(-param(f, ref, "s")), g);
  if (f.family == "borderline")
    return product_phase_symbol(bracket_power_symbol(-(n + 0.1)), bracket_power_symbol(-(n + 0.1)), g);
  PhaseFn fn;
  if (f.family == "gauss") {
    const double s2 = 2.0 * std::pow(param(f, ref, "sigma"), 2);
    fn = [s2](const Point& x, const Point& p) -> cplx {
      return std::exp(-(x.squaredNorm() + p.squaredNorm()) / s2);
    };
  } else if (f.family == "bracket") {
    const double m = param(f, ref, "m");
    fn = [m](const Point& x, const Point& p) -> cplx {
      return std::pow((1.0 + x.squaredNorm()) * (1.0 + p.squaredNorm()), m / 2.0);
    };
  } else if (f.family == "window") {
    const double R = param(f, ref, "R");
    const PartitionPair pp = build_partition();
    fn = [pp, R](const Point& x, const Point& p) -> cplx {
      return pp.phi_radial(x.norm() / R) * pp.phi_radial(p.norm() / R);
    };
  } else if (f.family == "modgauss") {
    const double s2 = 2.0 * std::pow(param(f, ref, "sigma"), 2), lambda = param(f, ref, "lambda");
    fn = [s2, lambda](const Point& x, const Point& p) -> cplx {
      return std::exp(-(x.squaredNorm() + p.squaredNorm()) / s2) * std::cos(lambda * x.sum()) *
             std::cos(lambda * p.sum());
    };
  } else if (f.family == "oscill") {
    const double R = param(f, ref, "R"), lambda = param(f, ref, "lambda");
    const PartitionPair pp = build_partition();
    fn = [pp, R, lambda](const Point& x, const Point& p) -> cplx {
      const double w = pp.phi_radial(x.norm() / R) * pp.phi_radial(p.norm() / R);
      return w * std::polar(1.0, std::sin(lambda * x.sum()) * std::sin(lambda * p.sum()));
    };
  }
  return sample_phase(g, fn);
}

PhaseSymbol resolve_phase(const std::string& text, const Grid& g) {
  return resolve_phase(parse_symbol_ref(text), g);
}

nlohmann::json corpus_manifest() {
  nlohmann::json families = nlohmann::json::array();
  for (const auto& f : corpus()) {
    nlohmann::json spaces = nlohmann::json::array();
    for (Space s : f.spaces) spaces.push_back(to_string(s));
    families.push_back({{"family", f.family}, {"closed_form", f.closed_form},
                        {"parameters", f.defaults}, {"spaces", spaces}});
  }
  const Grid cert(1, 512, 20.0);
  nlohmann::json instances = nlohmann::json::array();
  for (const auto& name : corpus_instances()) {
    const SymbolRef ref = parse_symbol_ref(name);
    nlohmann::json entry = {{"name", name}, {"family", ref.family}, {"parameters", ref.params}};
    const CorpusFamily& f = find_family(ref);
    const bool on_x = std::find(f.spaces.begin(), f.spaces.end(), Space::X) != f.spaces.end();
    if (on_x) {
      const Symbol a = resolve_symbol(ref, Space::X, 1);
      entry["degree"] = std::isinf(a.degree()) ? nlohmann::json("schwartz") : nlohmann::json(a.degree());
      // Certificate: seminorms at the certified degree (0 for Schwartz
      // members) are finite for |alpha| <= 2.
      const double m = std::isinf(a.degree()) ? 0.0 : a.degree();
      nlohmann::json semis = nlohmann::json::array();
      bool ok = true;
      for (const auto& alpha : multi_indices_up_to(1, 2)) {
        const double v = seminorm(a, m, alpha, cert).value;
        ok = ok && std::isfinite(v);
        semis.push_back({{"alpha", alpha}, {"value", v}});
      }
      entry["seminorms"] = semis;
      entry["certified"] = ok;
    } else {
      entry["degree"] = nullptr;
      entry["certified"] = nullptr;
    }
    instances.push_back(entry);
  }
  return {{"families", families}, {"instances", instances}};
}

std::vector<std::string> admissible_kernel_symbols(int n) {
  std::vector<std::string> out;
  for (const auto& name : corpus_instances()) {
    const SymbolRef ref = parse_symbol_ref(name);
    const CorpusFamily& f = find_family(ref);
    if (std::find(f.spaces.begin(), f.spaces.end(), Space::X) == f.spaces.end()) continue;
    if (resolve_symbol(ref, Space::X, n).degree() < -n) out.push_back(name);
  }
  return out;
}

}  // namespace taupsd::harness
