#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "taupsd/phase.hpp"
#include "taupsd/symbol.hpp"

namespace taupsd::harness {

/// Where a corpus symbol lives.
enum class Space { X, XStar, Phase };
const char* to_string(Space s);

/// A parsed reference such as "gauss(sigma=0.5)".
struct SymbolRef {
  std::string family;
  std::map<std::string, double> params;

  std::string text() const;
  double get(const std::string& key, double fallback) const;
};

/// Parses "family" or "family(k=v, k2=v2)". Throws UsageError on bad syntax.
SymbolRef parse_symbol_ref(const std::string& text);

struct CorpusFamily {
  std::string family;
  std::string closed_form;
  std::map<std::string, double> defaults;
  std::vector<Space> spaces;
};

/// The shipped families.
const std::vector<CorpusFamily>& corpus();

/// The shipped instances, e.g. bracket(m=-5) ... bracket(m=2).
std::vector<std::string> corpus_instances();

/// Symbol on X or X* in dimension n. Throws LookupError for unknown
/// families, unknown parameters, or families not defined on that space.
Symbol resolve_symbol(const SymbolRef& ref, Space space, int n);
Symbol resolve_symbol(const std::string& text, Space space, int n);

/// Phase-space samples on g.
PhaseSymbol resolve_phase(const SymbolRef& ref, const Grid& g);
PhaseSymbol resolve_phase(const std::string& text, const Grid& g);

/// JSON manifest: name, closed form, degree, parameters, spaces, and a
/// seminorm certificate (|alpha| <= 2 on a 1-D grid with L = 20).
nlohmann::json corpus_manifest();

/// Admissible members for the kernel lemmas in dimension n: certified
/// degree < -n (Schwartz members included).
std::vector<std::string> admissible_kernel_symbols(int n);

}  // namespace taupsd::harness
