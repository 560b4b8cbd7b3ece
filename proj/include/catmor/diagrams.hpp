#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "catmor/fincat.hpp"
#include "catmor/prng.hpp"
#include "catmor/qlinalg.hpp"

namespace catmor {

/// A contravariant functor from a finite category to finite-dimensional
/// rational vector spaces: a dimension per object and, for f: a -> b, a
/// matrix act[f] of shape dims[a] x dims[b] sending F(b) to F(a). The
/// composition convention is fixed once: F(g∘f) = F(f)·F(g).
struct Diagram {
  const FinCat* base = nullptr;
  std::vector<int> dims;
  std::vector<QMat> act;

  const FinCat& cat() const { return *base; }
  /// Functoriality violations by morphism pair; shape problems distinctly.
  ValidationReport validate() const;
  bool same_data(const Diagram& o) const {
    return dims == o.dims && act == o.act;
  }
};

Diagram zero_diagram(const FinCat& base);

/// Free functor on (d, Q^n): x |-> Q^n ⊗ hom(x,d)+, the action of f
/// permuting hom blocks by precomposition. Basis order: hom elements by
/// ascending morphism id, n coordinates within each block.
Diagram free_functor(const FinCat& base, int d, int n);

/// Natural transformation with components comp[a]: src(a) -> dst(a) as
/// dims_dst(a) x dims_src(a) matrices.
struct NatTrans {
  Diagram src, dst;
  std::vector<QMat> comp;

  bool natural() const;
  bool componentwise_iso() const;
};

NatTrans identity_nat(const Diagram& d);

/// Objectwise kernel of a natural transformation with the induced action;
/// also returns the inclusion matrices.
struct SubquotientDiagram {
  Diagram diagram;
  std::vector<QMat> structure;  // inclusions (kernel) or projections (cokernel)
};
SubquotientDiagram kernel_objectwise(const NatTrans& t);
SubquotientDiagram cokernel_objectwise(const NatTrans& t);

/// Deterministic in (seed, max_dim): a random natural transformation
/// between direct sums of free functors (via the universal property of
/// frees), then its kernel or cokernel. Functoriality holds by
/// construction and is re-validated before returning. max_dim bounds the
/// total free multiplicity on each side; 0 yields the zero diagram.
Diagram random_diagram(const FinCat& base, std::uint64_t seed, int max_dim);

/// Uniformly sampled element of the exact solution space of all naturality
/// constraints between two diagrams (integer coefficients in [-3, 3]).
NatTrans random_nat_trans(const Diagram& src, const Diagram& dst,
                          SplitMix64& rng);

/// dst obtained by conjugating src with random invertible components; the
/// returned transformation is a componentwise isomorphism by construction.
NatTrans random_iso_nat_trans(const Diagram& src, SplitMix64& rng);

// --- file format ----------------------------------------------------------
//
//   diagram <name> over <category>
//   space <obj> <dim>
//   matrix <morphism-id> <rows> <cols>
//   <rows lines of cols rationals>
//   end

struct DiagramFile {
  std::string name;
  std::string over;
  Diagram diagram;  // base is set by the caller after name resolution
};

DiagramFile parse_diagram(std::istream& in, const FinCat& base);
DiagramFile parse_diagram_file(const std::string& path, const FinCat& base);
void write_diagram(std::ostream& out, const std::string& name,
                   const Diagram& d);
std::string diagram_to_string(const std::string& name, const Diagram& d);

}  // namespace catmor
