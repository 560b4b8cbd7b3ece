#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catmor/fincat.hpp"

namespace catmor {

/// Line-oriented category file, staged before any table is trusted:
///
///   category <name>
///   objects <n>
///   morphism <id> <dom> <cod>
///   identity <obj> <id>
///   compose <f> <g> <h>        # h = g∘f
///   subcat <name> morphisms <id> ...
///   provenance <bid> <cok> <mid> <img>
///   end
///
/// '#' starts a comment; blank lines are ignored.
struct CategorySpec {
  std::string name;
  int objects = -1;

  struct MorDecl {
    int id, dom, cod, line;
  };
  struct IdDecl {
    int obj, id, line;
  };
  struct CompDecl {
    int f, g, h, line;
  };
  struct SubcatDecl {
    std::string name;
    std::vector<int> ids;
    int line;
  };
  struct ProvDecl {
    int bid, cok, mid, img, line;
  };

  std::vector<MorDecl> morphisms;
  std::vector<IdDecl> identities;
  std::vector<CompDecl> composes;
  std::vector<SubcatDecl> subcats;
  std::vector<ProvDecl> provenance;

  const SubcatDecl* find_subcat(const std::string& n) const;
};

struct ParseError : std::runtime_error {
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
  int line;
};

CategorySpec parse_category(std::istream& in);
CategorySpec parse_category_file(const std::string& path);

/// First stage: dangling / duplicate / missing declarations land in
/// report.malformed. When those are clean the category is built and the
/// axiom scan fills report.violations; subcats are built afterwards (their
/// closure problems are violations, not malformations).
struct SpecBuild {
  ValidationReport report;
  std::optional<FinCat> category;
  std::vector<SubcatMask> subcats;  // valid only while `category` lives
};

SpecBuild validate_and_build(const CategorySpec& spec);

void write_category(std::ostream& out, const FinCat& c,
                    const std::vector<SubcatMask>& subcats = {},
                    const std::vector<std::array<int, 4>>& provenance = {});
std::string category_to_string(const FinCat& c,
                               const std::vector<SubcatMask>& subcats = {},
                               const std::vector<std::array<int, 4>>& provenance = {});

}  // namespace catmor
