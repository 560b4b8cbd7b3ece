#include "catmor/category_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace catmor {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

int parse_int(const std::string& tok, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  return v;
}

}  // namespace

const CategorySpec::SubcatDecl* CategorySpec::find_subcat(
    const std::string& n) const {
  for (const auto& s : subcats)
    if (s.name == n) return &s;
  return nullptr;
}

CategorySpec parse_category(std::istream& in) {
  CategorySpec spec;
  std::string raw;
  int lineno = 0;
  bool started = false, ended = false;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw = raw.substr(0, hash);
    auto toks = split_tokens(raw);
    if (toks.empty()) continue;
    if (ended) throw ParseError(lineno, "content after 'end'");
    const std::string& kw = toks[0];
    if (!started) {
      if (kw != "category" || toks.size() != 2)
        throw ParseError(lineno, "expected 'category <name>'");
      spec.name = toks[1];
      started = true;
      continue;
    }
    if (kw == "objects") {
      if (toks.size() != 2) throw ParseError(lineno, "expected 'objects <n>'");
      if (spec.objects >= 0) throw ParseError(lineno, "duplicate 'objects'");
      spec.objects = parse_int(toks[1], lineno);
    } else if (kw == "morphism") {
      if (toks.size() != 4)
        throw ParseError(lineno, "expected 'morphism <id> <dom> <cod>'");
      spec.morphisms.push_back({parse_int(toks[1], lineno),
                                parse_int(toks[2], lineno),
                                parse_int(toks[3], lineno), lineno});
    } else if (kw == "identity") {
      if (toks.size() != 3)
        throw ParseError(lineno, "expected 'identity <obj> <id>'");
      spec.identities.push_back(
          {parse_int(toks[1], lineno), parse_int(toks[2], lineno), lineno});
    } else if (kw == "compose") {
      if (toks.size() != 4)
        throw ParseError(lineno, "expected 'compose <f> <g> <h>'");
      spec.composes.push_back({parse_int(toks[1], lineno),
                               parse_int(toks[2], lineno),
                               parse_int(toks[3], lineno), lineno});
    } else if (kw == "subcat") {
      if (toks.size() < 3 || toks[2] != "morphisms")
        throw ParseError(lineno, "expected 'subcat <name> morphisms <id> ...'");
      CategorySpec::SubcatDecl d;
      d.name = toks[1];
      d.line = lineno;
      for (size_t i = 3; i < toks.size(); ++i)
        d.ids.push_back(parse_int(toks[i], lineno));
      spec.subcats.push_back(std::move(d));
    } else if (kw == "provenance") {
      if (toks.size() != 5)
        throw ParseError(lineno, "expected 'provenance <bid> <cok> <mid> <img>'");
      spec.provenance.push_back(
          {parse_int(toks[1], lineno), parse_int(toks[2], lineno),
           parse_int(toks[3], lineno), parse_int(toks[4], lineno), lineno});
    } else if (kw == "end") {
      if (toks.size() != 1) throw ParseError(lineno, "junk after 'end'");
      ended = true;
    } else {
      throw ParseError(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (!started) throw ParseError(lineno, "missing 'category' header");
  if (!ended) throw ParseError(lineno, "missing 'end'");
  return spec;
}

CategorySpec parse_category_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_category(in);
}

SpecBuild validate_and_build(const CategorySpec& spec) {
  SpecBuild out;
  auto& mal = out.report.malformed;
  if (spec.objects < 0)
    mal.push_back({"objects", "missing or negative object count"});
  int m = static_cast<int>(spec.morphisms.size());
  std::vector<unsigned char> seen(m, 0);
  bool ids_dense = true;
  for (const auto& d : spec.morphisms) {
    if (d.id < 0 || d.id >= m) {
      mal.push_back({"morphism-id", "morphism id " + std::to_string(d.id) +
                                        " outside 0.." + std::to_string(m - 1)});
      ids_dense = false;
      continue;
    }
    if (seen[d.id]) {
      mal.push_back({"morphism-id", "duplicate morphism id " + std::to_string(d.id)});
      ids_dense = false;
    }
    seen[d.id] = 1;
    if (spec.objects >= 0 && (d.dom < 0 || d.dom >= spec.objects || d.cod < 0 ||
                              d.cod >= spec.objects))
      mal.push_back({"morphism-endpoint",
                     "morphism " + std::to_string(d.id) + " references objects " +
                         std::to_string(d.dom) + "->" + std::to_string(d.cod)});
  }
  auto valid_mor = [&](int id) { return id >= 0 && id < m && ids_dense; };
  std::vector<int> identities(std::max(spec.objects, 0), -1);
  for (const auto& d : spec.identities) {
    if (spec.objects < 0 || d.obj < 0 || d.obj >= spec.objects) {
      mal.push_back({"identity", "identity declared for unknown object " +
                                     std::to_string(d.obj)});
      continue;
    }
    if (!valid_mor(d.id)) {
      mal.push_back({"identity", "identity of object " + std::to_string(d.obj) +
                                     " is dangling morphism id " +
                                     std::to_string(d.id)});
      continue;
    }
    if (identities[d.obj] >= 0)
      mal.push_back({"identity", "object " + std::to_string(d.obj) +
                                     " has two identity declarations"});
    identities[d.obj] = d.id;
  }
  for (int a = 0; a < spec.objects; ++a)
    if (a < static_cast<int>(identities.size()) && identities[a] < 0)
      mal.push_back({"identity", "object " + std::to_string(a) +
                                     " has no identity declaration"});
  for (const auto& d : spec.composes)
    if (!valid_mor(d.f) || !valid_mor(d.g) || !valid_mor(d.h))
      mal.push_back({"compose", "compose line at " + std::to_string(d.line) +
                                    " references a dangling morphism id"});
  for (const auto& d : spec.subcats)
    for (int id : d.ids)
      if (!valid_mor(id))
        mal.push_back({"subcat", "subcat " + d.name +
                                     " references dangling morphism id " +
                                     std::to_string(id)});
  for (const auto& d : spec.provenance)
    if (!valid_mor(d.cok) || !valid_mor(d.mid) || !valid_mor(d.img))
      mal.push_back({"provenance", "provenance line at " +
                                       std::to_string(d.line) +
                                       " references a dangling morphism id"});
  if (!mal.empty()) return out;

  std::vector<Morphism> mor(m);
  for (const auto& d : spec.morphisms) mor[d.id] = {d.dom, d.cod};
  std::vector<int> comp(static_cast<size_t>(m) * m, -1);
  for (const auto& d : spec.composes) {
    int& slot = comp[static_cast<size_t>(d.f) * m + d.g];
    if (slot >= 0 && slot != d.h) {
      out.report.malformed.push_back(
          {"compose", "conflicting composites for pair (" + std::to_string(d.f) +
                          "," + std::to_string(d.g) + ")"});
      return out;
    }
    slot = d.h;
  }
  out.category.emplace(spec.name, spec.objects, std::move(mor),
                       std::move(identities), std::move(comp));
  ValidationReport ax = validate_axioms(*out.category);
  out.report.violations = std::move(ax.violations);
  for (const auto& d : spec.subcats) {
    SubcatMask mask(*out.category, d.ids, d.name);
    ValidationReport sr = mask.validate();
    out.report.violations.insert(out.report.violations.end(),
                                 sr.violations.begin(), sr.violations.end());
    out.subcats.push_back(std::move(mask));
  }
  return out;
}

void write_category(std::ostream& os, const FinCat& c,
                    const std::vector<SubcatMask>& subcats,
                    const std::vector<std::array<int, 4>>& provenance) {
  os << "category " << c.name() << "\n";
  os << "objects " << c.object_count() << "\n";
  for (int f = 0; f < c.morphism_count(); ++f)
    os << "morphism " << f << " " << c.dom(f) << " " << c.cod(f) << "\n";
  for (int a = 0; a < c.object_count(); ++a)
    os << "identity " << a << " " << c.identity(a) << "\n";
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < c.morphism_count(); ++g)
      if (c.composable(f, g) && c.raw_comp(f, g) >= 0)
        os << "compose " << f << " " << g << " " << c.raw_comp(f, g) << "\n";
  for (const auto& s : subcats) {
    os << "subcat " << s.name() << " morphisms";
    for (int id : s.morphisms()) os << " " << id;
    os << "\n";
  }
  for (const auto& p : provenance)
    os << "provenance " << p[0] << " " << p[1] << " " << p[2] << " " << p[3]
       << "\n";
  os << "end\n";
}

std::string category_to_string(const FinCat& c,
                               const std::vector<SubcatMask>& subcats,
                               const std::vector<std::array<int, 4>>& provenance) {
  std::ostringstream os;
  write_category(os, c, subcats, provenance);
  return os.str();
}

}  // namespace catmor
