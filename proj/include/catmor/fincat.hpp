#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace catmor {

struct Morphism {
  int dom = 0;
  int cod = 0;
};

struct ValidationIssue {
  std::string code;
  std::string detail;
};

/// Malformed-table problems (dangling ids and the like) are kept apart from
/// axiom failures: a report with only axiom entries still describes a
/// structurally readable composition table.
struct ValidationReport {
  std::vector<ValidationIssue> malformed;
  std::vector<ValidationIssue> violations;
  bool ok() const { return malformed.empty() && violations.empty(); }
  std::string summary() const;
};

/// A finite category as plain data: a morphism list indexed by id and a
/// dense composition table. compose(f, g) is "f then g", that is g∘f.
/// Instances are immutable after construction and safe to share across
/// threads.
class FinCat {
 public:
  FinCat() = default;
  FinCat(std::string name, int objects, std::vector<Morphism> morphisms,
         std::vector<int> identities, std::vector<int> comp_table);

  const std::string& name() const { return name_; }
  void rename(std::string n) { name_ = std::move(n); }

  int object_count() const { return objects_; }
  int morphism_count() const { return static_cast<int>(mor_.size()); }
  int dom(int f) const { return mor_[f].dom; }
  int cod(int f) const { return mor_[f].cod; }
  int identity(int a) const { return identity_[a]; }
  bool is_identity_morphism(int f) const;

  bool composable(int f, int g) const { return cod(f) == dom(g); }
  /// g∘f. Precondition: composable(f, g) and the table entry is defined.
  int compose(int f, int g) const;
  /// Raw table entry: -1 when undefined. Used by validators only.
  int raw_comp(int f, int g) const {
    return comp_[static_cast<size_t>(f) * mor_.size() + g];
  }

  const std::vector<int>& hom(int a, int b) const {
    return hom_[static_cast<size_t>(a) * objects_ + b];
  }

  bool is_iso(int f) const { return inverse_[f] >= 0; }
  int inverse(int f) const { return inverse_[f]; }

  bool operator==(const FinCat& o) const;

 private:
  std::string name_;
  int objects_ = 0;
  std::vector<Morphism> mor_;
  std::vector<int> identity_;
  std::vector<int> comp_;
  std::vector<std::vector<int>> hom_;
  std::vector<int> inverse_;
};

/// A wide subcategory given by a member mask over the parent's morphisms.
class SubcatMask {
 public:
  SubcatMask() = default;
  SubcatMask(const FinCat& parent, std::vector<int> member_ids,
             std::string name = "");

  static SubcatMask full(const FinCat& parent, std::string name = "");
  static SubcatMask identities(const FinCat& parent, std::string name = "");
  static SubcatMask isos(const FinCat& parent, std::string name = "");

  const FinCat& parent() const { return *parent_; }
  const std::string& name() const { return name_; }
  bool contains(int f) const { return f >= 0 && member_[f] != 0; }
  const std::vector<int>& morphisms() const { return ids_; }
  int size() const { return static_cast<int>(ids_.size()); }

  /// Identities present and closure under the parent's composition.
  ValidationReport validate() const;

  /// Isomorphism within the subcategory: an inverse that is itself a member.
  bool is_iso_in(int f) const;

  bool operator==(const SubcatMask& o) const;

 private:
  const FinCat* parent_ = nullptr;
  std::string name_;
  std::vector<unsigned char> member_;
  std::vector<int> ids_;
};

/// Axiom scan of a built category: identity assignment and neutrality,
/// closure (table defined exactly on composable pairs with matching
/// endpoints), and exhaustive associativity.
ValidationReport validate_axioms(const FinCat& c);

/// All associativity-breaking triples (f, g, h), sorted. The parallel path
/// must agree with the serial one bit for bit; both are exercised in tests.
std::vector<std::array<int, 3>> associativity_violations(const FinCat& c,
                                                         bool parallel = false);

/// Non-identity morphisms that are not composites of two non-identities.
/// Imposing functor constraints on these alone is equivalent to imposing
/// them on every morphism.
std::vector<int> generating_morphisms(const FinCat& c);

struct PullbackSquare {
  int apex = -1;
  int to_dom_f = -1;  // leg p -> dom(f), paired with g in the square
  int to_dom_g = -1;  // leg p -> dom(g), paired with f
};

/// Pullback of the cospan (f, g) computed inside the subcategory: legs and
/// mediating morphisms all range over members. Among valid pullbacks the
/// one with lexicographically least legs (to_dom_g, to_dom_f) is returned;
/// absent if the cospan has none.
std::optional<PullbackSquare> pullback(const SubcatMask& sub, int f, int g);

/// Every valid pullback square of the cospan, in enumeration order.
std::vector<PullbackSquare> all_pullbacks(const SubcatMask& sub, int f, int g);

struct IndexingReport {
  bool ok = true;
  std::string detail;
};

/// EI (every endomorphism invertible in the subcategory), pullbacks for
/// every cospan, and monicity of every member.
IndexingReport is_indexing_category(const SubcatMask& sub);

struct CommaObject {
  int map = -1;  // member morphism with codomain fixed at the apex
  int dom = -1;
};

/// One representative per isomorphism class of maps into the apex, carrying
/// the covering order: element i <= j when some member k has j∘k = i.
struct PosetOnSkeleton {
  int apex = -1;
  std::vector<CommaObject> elements;  // ascending representative ids
  std::vector<std::vector<unsigned char>> leq;
  std::vector<std::vector<int>> witness;  // witness[i][j]∘-composes to i

  // Skeletalization data for every map into the apex, aligned with
  // comma_maps: the class index and an iso r with rep∘r = map.
  std::vector<int> comma_maps;
  std::vector<int> comma_class;
  std::vector<int> comma_iso;

  int size() const { return static_cast<int>(elements.size()); }
  int index_of_rep(int map_id) const;
};

/// Requires is_indexing_category(sub); throws std::invalid_argument else.
PosetOnSkeleton skeleton(const SubcatMask& sub, int apex);

struct SkeletalForm {
  int rep_index = -1;  // index into PosetOnSkeleton::elements
  int iso = -1;        // member iso r with rep∘r = input
};

SkeletalForm skeletalize(const PosetOnSkeleton& sk, int map_id);

/// Topological order refining leq, minimal elements first; ties broken by
/// least representative morphism id. Returns element indices.
std::vector<int> linear_extension(const PosetOnSkeleton& p);

/// The subcategory as a standalone category with densely renumbered
/// morphism ids (parent order preserved). Optional id maps are filled with
/// new->parent and parent->new (-1 for non-members).
FinCat subcategory_as_fincat(const SubcatMask& sub, std::string name,
                             std::vector<int>* to_parent = nullptr,
                             std::vector<int>* from_parent = nullptr);

}  // namespace catmor
