#include <CLI11.hpp>
#include <array>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "catmor/category_io.hpp"
#include "catmor/conjugation.hpp"
#include "catmor/diagrams.hpp"
#include "catmor/generators.hpp"
#include "catmor/morita.hpp"

namespace {

using namespace catmor;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(std::ostream& os, const std::string& path, const std::string& text) {
  if (path.empty()) {
    os << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Factorization load_factorization(const std::string& path) {
  CategorySpec spec = parse_category_file(path);
  SpecBuild built = validate_and_build(spec);
  if (!built.report.ok())
    throw InputError(path + ": " + built.report.summary());
  const auto* i_decl = spec.find_subcat("I");
  const auto* a_decl = spec.find_subcat("A");
  if (!i_decl || !a_decl)
    throw InputError(path + ": factorization needs subcat blocks I and A");
  return Factorization::make(std::move(*built.category), i_decl->ids,
                             a_decl->ids);
}

int cmd_validate(const std::string& path) {
  CategorySpec spec = parse_category_file(path);
  SpecBuild built = validate_and_build(spec);
  for (const auto& i : built.report.malformed)
    std::cout << "FAIL malformed " << i.code << " " << i.detail << "\n";
  for (const auto& i : built.report.violations)
    std::cout << "FAIL axiom " << i.code << " " << i.detail << "\n";
  if (!built.report.malformed.empty()) return kExitInput;
  if (!built.report.violations.empty()) return kExitFail;
  std::cout << "PASS validate " << spec.name << "\n";
  return kExitPass;
}

int cmd_check_conjugation(const std::string& path) {
  Factorization f = load_factorization(path);
  ConjugationReport rep = check_conjugation(f);
  std::cout << rep.summary();
  std::cout << (rep.ok ? "PASS" : "FAIL") << " check-conjugation "
            << f.U().name() << "\n";
  return rep.ok ? kExitPass : kExitFail;
}

int cmd_build_b(const std::string& path, const std::string& out) {
  Factorization f = load_factorization(path);
  ConjugateCategory cc = build_conjugate(std::move(f));
  std::vector<std::array<int, 4>> prov;
  for (int b = 0; b < cc.category().morphism_count(); ++b) {
    const BMorphism& t = cc.provenance(b);
    prov.push_back({b, t.cok, t.mid, t.img});
  }
  emit(std::cout, out, category_to_string(cc.category(), {}, prov));
  std::cerr << "PASS build-b " << cc.category().name() << " objects "
            << cc.category().object_count() << " morphisms "
            << cc.category().morphism_count() << "\n";
  return kExitPass;
}

int cmd_factorize(const std::string& path, int morphism) {
  Factorization f = load_factorization(path);
  ConjugateCategory cc = build_conjugate(std::move(f));
  if (morphism < 0 || morphism >= cc.category().morphism_count())
    throw InputError("morphism id out of range");
  const BMorphism& t = threefold_factorize(cc, morphism);
  std::cout << "morphism " << morphism << " src " << t.src << " dst " << t.dst
            << " cok " << t.cok << " mid " << t.mid << " img " << t.img
            << " regular " << (is_regular(cc, morphism) ? 1 : 0) << "\n";
  return kExitPass;
}

int cmd_bimodule(const std::string& path) {
  Factorization f = load_factorization(path);
  ConjugateCategory cc = build_conjugate(std::move(f));
  RegularBimodule bim = regular_bimodule(cc);
  for (int a = 0; a < bim.objects; ++a)
    for (int b = 0; b < bim.objects; ++b) {
      std::cout << "U+ " << a << " " << b << " size " << bim.size(a, b)
                << " elems";
      for (int k = 1; k <= bim.size(a, b); ++k)
        std::cout << " " << bim.elem(a, b, k);
      std::cout << "\n";
    }
  return kExitPass;
}

int cmd_apply(const std::string& path, const std::string& diagram_path,
              const std::string& out, bool left) {
  Factorization f = load_factorization(path);
  ConjugateCategory cc = build_conjugate(std::move(f));
  AdjunctionContext ctx(std::move(cc));
  const FinCat& in_base = left ? ctx.catB() : ctx.catA();
  DiagramFile df = parse_diagram_file(diagram_path, in_base);
  if (df.over != in_base.name())
    throw InputError("diagram is over '" + df.over + "', expected '" +
                     in_base.name() + "'");
  ValidationReport rep = df.diagram.validate();
  if (!rep.ok()) throw InputError(diagram_path + ": " + rep.summary());
  Diagram result = left ? apply_l(ctx, df.diagram) : apply_r(ctx, df.diagram);
  emit(std::cout, out,
       diagram_to_string((left ? "L." : "R.") + df.name, result));
  return kExitPass;
}

int cmd_unit_check(const std::string& path, int dim, int object) {
  Factorization f = load_factorization(path);
  ConjugateCategory cc = build_conjugate(std::move(f));
  AdjunctionContext ctx(std::move(cc));
  bool all_ok = true;
  for (int b = 0; b < ctx.catB().object_count(); ++b) {
    if (object >= 0 && b != object) continue;
    for (const TriangularityCell& cell : unit_triangularity(ctx, b, dim)) {
      all_ok = all_ok && cell.ok;
      std::cout << (cell.ok ? "PASS" : "FAIL") << " unit-triangular b "
                << cell.b << " a " << cell.a << " blocks " << cell.blocks;
      if (!cell.ok) std::cout << " " << cell.detail;
      std::cout << "\n";
    }
  }
  return all_ok ? kExitPass : kExitFail;
}

int cmd_check_equivalence(const std::string& path, int trials,
                          unsigned long long seed, int max_dim) {
  Factorization f = load_factorization(path);
  ConjugateCategory cc = build_conjugate(std::move(f));
  AdjunctionContext ctx(std::move(cc));
  EquivalenceOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  opt.max_dim = max_dim;
  bool all_ok = true;
  for (const TrialResult& r : check_equivalence(ctx, opt)) {
    std::cout << r.line << "\n";
    all_ok = all_ok && r.pass;
  }
  std::cout << (all_ok ? "PASS" : "FAIL") << " check-equivalence "
            << ctx.catB().name() << " trials " << trials << "\n";
  return all_ok ? kExitPass : kExitFail;
}

int cmd_gen_example(const std::string& kind, int n, const std::string& out) {
  std::optional<Factorization> f;
  if (kind == "gamma")
    f = gen_gamma(n);
  else if (kind == "idem")
    f = gen_idem();
  else if (kind == "poset")
    f = gen_poset(3, {{0, 1}, {0, 2}});
  else if (kind == "sigma")
    f = gen_sigma(n);
  else if (kind == "induction")
    f = gen_induction(subset_lattice_category(n));
  else
    throw InputError("unknown example kind '" + kind + "'");
  emit(std::cout, out, category_to_string(f->U(), {f->I, f->A}));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite conjugate pairs of categories and the induced"
               " diagram-category equivalence, over exact rationals"};
  app.require_subcommand(1);

  std::string path, diagram_path, out;
  int morphism = 0, dim = 1, object = -1, trials = 10, max_dim = 3, n = 2;
  unsigned long long seed = 0;

  auto* validate = app.add_subcommand("validate", "check category axioms");
  validate->add_option("file", path)->required();

  auto* checkc = app.add_subcommand("check-conjugation",
                                    "verify the factorization axioms");
  checkc->add_option("file", path)->required();

  auto* buildb = app.add_subcommand("build-b", "construct the conjugate category");
  buildb->add_option("file", path)->required();
  buildb->add_option("-o,--output", out);

  auto* factorize = app.add_subcommand("factorize",
                                       "three-fold factorization of a morphism");
  factorize->add_option("file", path)->required();
  factorize->add_option("--morphism", morphism)->required();

  auto* bimodule = app.add_subcommand("bimodule", "regular bimodule tables");
  bimodule->add_option("file", path)->required();

  auto* applyl = app.add_subcommand("apply-l", "left adjoint on a diagram over B");
  applyl->add_option("file", path)->required();
  applyl->add_option("diagram", diagram_path)->required();
  applyl->add_option("-o,--output", out);

  auto* applyr = app.add_subcommand("apply-r", "right adjoint on a diagram over A");
  applyr->add_option("file", path)->required();
  applyr->add_option("diagram", diagram_path)->required();
  applyr->add_option("-o,--output", out);

  auto* unitc = app.add_subcommand("unit-check",
                                   "unit triangularity on free functors");
  unitc->add_option("file", path)->required();
  unitc->add_option("--dim", dim);
  unitc->add_option("--object", object);

  auto* checke = app.add_subcommand("check-equivalence",
                                    "randomized equivalence verification");
  checke->add_option("file", path)->required();
  checke->add_option("--trials", trials);
  checke->add_option("--seed", seed);
  checke->add_option("--max-dim", max_dim);

  auto* gen = app.add_subcommand("gen-example", "write a known conjugate pair");
  std::string kind;
  gen->add_option("kind", kind)->required();
  gen->add_option("--n", n);
  gen->add_option("-o,--output", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (checkc->parsed()) return cmd_check_conjugation(path);
    if (buildb->parsed()) return cmd_build_b(path, out);
    if (factorize->parsed()) return cmd_factorize(path, morphism);
    if (bimodule->parsed()) return cmd_bimodule(path);
    if (applyl->parsed()) return cmd_apply(path, diagram_path, out, true);
    if (applyr->parsed()) return cmd_apply(path, diagram_path, out, false);
    if (unitc->parsed()) return cmd_unit_check(path, dim, object);
    if (checke->parsed()) return cmd_check_equivalence(path, trials, seed, max_dim);
    if (gen->parsed()) return cmd_gen_example(kind, n, out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
