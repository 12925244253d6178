#include "cssaut/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "cssaut/automorphism.hpp"
#include "cssaut/errors.hpp"
#include "cssaut/group_analysis.hpp"
#include "cssaut/reference_values.hpp"
#include "cssaut/stabilizer.hpp"
#include "cssaut/synthesis.hpp"

namespace cssaut {

std::string to_string(ClaimStatus status) {
  switch (status) {
    case ClaimStatus::match: return "match";
    case ClaimStatus::mismatch: return "mismatch";
    case ClaimStatus::flagged: return "flagged";
  }
  return "?";
}

namespace {

template <typename T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string str(bool v) { return v ? "true" : "false"; }

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return "{" + out + "}";
}

class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}
  template <typename A, typename B>
  bool compare(const std::string& claim, const A& expected, const B& computed) {
    const bool ok = expected == computed;
    r_.claims.push_back({claim, str(expected), str(computed), ok ? ClaimStatus::match : ClaimStatus::mismatch});
    return ok;
  }
  bool check(const std::string& claim, bool ok, const std::string& computed = "") {
    r_.claims.push_back({claim, "true", computed.empty() ? str(ok) : computed,
                         ok ? ClaimStatus::match : ClaimStatus::mismatch});
    return ok;
  }
  void flag(const std::string& claim, const std::string& stated, const std::string& computed) {
    r_.claims.push_back({claim, stated, computed, ClaimStatus::flagged});
  }

 private:
  CriterionResult& r_;
};

struct Fixtures {
  std::string dir;
  LinearCode code(const std::string& name) const { return read_code_file(dir + "/" + name); }
  CssCode css15() const { return css_from_pair(code("hamming_15_11.code"), code("simplex_15_4.code")); }
  CssCode css22() const { return css_from_pair(code("dual_22_15.code"), code("sd_22_7.code")); }
  CssCode css31() const { return css_from_pair(code("bch_31_21.code"), code("bch_31_10.code")); }
  StabilizerCode stab8() const { return read_stabilizer_file(dir + "/stab_8_3_3.stab"); }
};

PermGroup joint_aut(const CssCode& css) { return intersect_aut(css.c1, css.c2); }

Permutation random_element(std::mt19937_64& rng, const PermGroup& g) {
  Permutation p = Permutation::identity(g.degree());
  if (g.generators().empty()) return p;
  for (int i = 0; i < 20; ++i) p = compose(p, g.generators()[rng() % g.generators().size()]);
  return p;
}

BitVector random_bits(std::mt19937_64& rng, std::size_t n) {
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng() & 1) v.set(i);
  }
  return v;
}

BitMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    std::vector<BitVector> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(random_bits(rng, n));
    BitMatrix m(std::move(rows), n);
    if (inverse(m)) return m;
  }
}

// Stabilizer code with random structure: the standard code conjugated by
// random symplectic transvections.
StabilizerCode random_stabilizer(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<Gf4Vector> s, lx, lz;
  for (std::size_t i = 0; i < n; ++i) {
    const Gf4Vector x(BitVector::unit(n, i), BitVector(n));
    const Gf4Vector z(BitVector(n), BitVector::unit(n, i));
    if (i < n - k) {
      s.push_back(z);
    } else {
      lx.push_back(x);
      lz.push_back(z);
    }
  }
  for (int t = 0; t < 12; ++t) {
    const Gf4Vector h(random_bits(rng, n), random_bits(rng, n));
    for (auto* group : {&s, &lx, &lz}) {
      for (auto& v : *group) {
        if (symplectic_inner(v, h)) v ^= h;
      }
    }
  }
  return load_stabilizer(s, lx, lz);
}

// ---------------------------------------------------------------------------

void aut_orders(const Fixtures& fx, CriterionResult& r) {
  Recorder rec(r);
  bool ok = rec.compare("|Aut([22,7,8])|", reference::kAutOrder22, automorphism_group(fx.code("sd_22_7.code")).order());
  ok &= rec.compare("|Aut([31,10,12])|", reference::kAutOrder31,
                    automorphism_group(fx.code("bch_31_10.code")).order());
  ok &= rec.compare("|Aut([[8,3,3]])|", reference::kAutOrder8, stab_aut_group(fx.stab8()).order());
  r.pass = ok;
}

void simplex_order(const Fixtures& fx, CriterionResult& r) {
  Recorder rec(r);
  const BigInt computed = automorphism_group(fx.code("simplex_15_4.code")).order();
  bool ok = rec.compare("|Aut([15,4,8])|", reference::kAutOrder15, computed);
  ok &= rec.compare("|GL(4,2)| = |A8|", reference::kAutOrder15, gl2_order(4));
  if (computed != reference::kStatedAutOrder15) {
    rec.flag("stated |Aut([15,4,8])| of A8", std::to_string(reference::kStatedAutOrder15), str(computed));
    r.note = "the stated order 21600 is not |A8| = 20160; the digits appear transposed";
  } else {
    ok = false;
  }
  r.pass = ok;
}

// Computed label group vs the published generators.
bool published_group(Recorder& rec, const std::string& name, const CssCode& css,
                     const std::vector<BitMatrix>& published, std::string& note) {
  const auto aut = joint_aut(css);
  const auto labels = logical_generators(css, aut);
  const std::size_t k = css.k();
  const MatrixGroup computed(k, labels);
  const MatrixGroup printed(k, published);
  bool ok = rec.compare(name + ": |<computed T1>| = |<published>|", printed.order(), computed.order());
  ok &= rec.check(name + ": both orders exact", computed.exact() && printed.exact());
  // The published matrices are relative to an unknown logical basis; find
  // one in which they are members.
  const auto elements = enumerate_group(labels, k);
  std::string form = "column";
  auto x = find_conjugator(elements, computed, published);
  if (!x) {
    std::vector<BitMatrix> transposed;
    for (const auto& m : published) transposed.push_back(m.transpose());
    x = find_conjugator(elements, computed, transposed);
    form = "row";
  }
  if (!rec.check(name + ": logical basis found for the published matrices", x.has_value())) return false;
  const auto rebased = rebase_logical(css, *x);
  const MatrixGroup after(k, logical_generators(rebased, aut));
  for (std::size_t i = 0; i < published.size(); ++i) {
    const auto m = form == "column" ? published[i] : published[i].transpose();
    ok &= rec.check(name + ": published generator " + std::to_string(i + 1) + " is a member", after.contains(m));
  }
  note += name + ": published matrices read in " + form + " form. ";
  return ok;
}

void t1_fidelity(const Fixtures& fx, CriterionResult& r) {
  Recorder rec(r);
  bool ok = published_group(rec, "[[15,7,3]]", fx.css15(), reference::logical_generators_15(), r.note);
  ok &= published_group(rec, "[[22,8,4]]", fx.css22(), reference::logical_generators_22(), r.note);
  r.pass = ok;
}

void symplectic(const Fixtures& fx, CriterionResult& r) {
  Recorder rec(r);
  const auto code = fx.stab8();
  const auto aut = stab_aut_group(code);
  std::vector<BitMatrix> images;
  for (const auto& p : aut.generators()) images.push_back(stab_symplectic_rep(code, p));
  const MatrixGroup computed(6, images);
  const auto published = reference::symplectic_generators_8();
  const MatrixGroup printed(6, published);
  bool ok = rec.compare("|image group| = |published group|", printed.order(), computed.order());
  for (std::size_t i = 0; i < published.size(); ++i) {
    ok &= rec.check("published generator " + std::to_string(i + 1) + " is a member", computed.contains(published[i]));
  }
  std::size_t symplectic_count = 0, preserved = 0;
  const auto all = aut.elements();
  for (const auto& p : all) {
    const auto m = stab_symplectic_rep(code, p);
    if (is_symplectic(m)) ++symplectic_count;
    if (m.block(0, 3, 3, 3).is_zero()) ++preserved;
  }
  ok &= rec.compare("automorphisms giving symplectic images", all.size(), symplectic_count);
  ok &= rec.compare("images with zero upper-right 3x3 block", all.size(), preserved);
  r.pass = ok;
}

void code22_pipeline(const Fixtures& fx, CriterionResult& r) {
  Recorder rec(r);
  const auto css = fx.css22();
  const auto aut = joint_aut(css);
  bool ok = rec.compare("algebra span dimension", std::size_t{64}, algebra_span(logical_generators(css, aut)).dimension());
  const auto g12 = build_g12(css, aut);
  ok &= rec.compare("|G12| = |SL(16,2)|", sl_order(16, 2), g12.group.order());
  ok &= rec.check("order certified", g12.group.exact(), g12.group.certificate());
  r.pass = ok;
}

void code15_structure(const Fixtures& fx, CriterionResult& r) {
  Recorder rec(r);
  const auto css = fx.css15();
  G12Options options;
  options.first_block_subgroup = true;
  const auto g12 = build_g12(css, joint_aut(css), options);
  bool ok = rec.compare("|G12| = |SL(12,2)| |SL(2,2)|", sl_order(12, 2) * sl_order(2, 2), g12.group.order());
  ok &= rec.check("order certified", g12.group.exact(), g12.group.certificate());
  ok &= rec.check("|G12| > 2^144", g12.group.order() > (BigInt(1) << 144));
  const auto& structure = g12.g1_structure;
  const bool line = std::any_of(structure.found.begin(), structure.found.end(),
                                [](const BitMatrix& s) { return s.rows() == 1; });
  ok &= rec.check("invariant 1-dimensional logical subspace", line);
  if (!g12.first_block_subgroup || !rec.check("first-block subgroup extracted", true)) {
    r.pass = false;
    return;
  }
  const auto& sub = *g12.first_block_subgroup;
  ok &= rec.compare("|first-block subgroup| = |SL(6,2)|", sl_order(6, 2), sub.order());
  std::size_t six_blocks = 0;
  for (const auto& block : restricted_block_group(sub, structure.chain)) {
    if (block.dim() == 6) {
      ++six_blocks;
      ok &= rec.compare("6-dimensional quotient block group order", sl_order(6, 2), block.order());
    }
  }
  ok &= rec.compare("6-dimensional blocks in the chain", std::size_t{1}, six_blocks);
  r.pass = ok;
}

void code31_structure(const Fixtures& fx, CriterionResult& r) {
  Recorder rec(r);
  const auto css = fx.css31();
  G12Options options;
  options.first_block_subgroup = true;
  const auto g12 = build_g12(css, joint_aut(css), options);
  auto dims = g12.g1_structure.chain.block_dims();
  std::sort(dims.rbegin(), dims.rend());
  bool ok = rec.compare("invariant block dimensions", join({5, 5, 1}), join(dims));
  if (!g12.first_block_subgroup) {
    r.pass = false;
    return;
  }
  // Blocks of the decomposition, each restricted separately.
  for (const auto& w : g12.g1_structure.decomposition) {
    if (w.rows() != 5) continue;
    InvariantChain chain;
    chain.subspaces = {BitMatrix(0, 11), w};
    const auto blocks = restricted_block_group(*g12.first_block_subgroup, chain);
    ok &= rec.compare("5-block restricted group order", sl_order(5, 2), blocks.back().order());
  }
  const BigInt bound = sl_order(10, 2) * sl_order(10, 2) * 6;
  ok &= rec.check("|SL(10,2)|^2 * 6 > 2^199", bound > (BigInt(1) << 199));
  ok &= rec.check("computed |G12| > 2^199", g12.group.order() > (BigInt(1) << 199),
                  "2^" + std::to_string(msb(g12.group.order())) + " (" + g12.group.certificate() + ")");
  rec.compare("computed |G12| = |SL(10,2)|^2 |SL(2,2)|", bound, g12.group.order());
  r.pass = ok;
}

void coset_simulation(const Fixtures& fx, std::uint64_t seed, CriterionResult& r) {
  Recorder rec(r);
  bool ok = true;
  {
    const auto css = fx.css15();
    const auto aut = joint_aut(css);
    std::size_t checked = 0, good = 0;
    for (const auto& p : aut.generators()) {
      const auto label = label_action(css, p);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << css.k()); ++bits) {
        BitVector beta(css.k());
        for (std::size_t i = 0; i < css.k(); ++i) {
          if ((bits >> i) & 1U) beta.set(i);
        }
        ++checked;
        if (verify_coset_action(css, p, beta, label)) ++good;
      }
    }
    ok &= rec.compare("[[15,7,3]] generators x all labels", checked, good);
  }
  std::mt19937_64 rng(seed);
  for (const auto& [name, css] : {std::pair{std::string("[[22,8,4]]"), fx.css22()},
                                  std::pair{std::string("[[31,11,5]]"), fx.css31()}}) {
    const auto aut = joint_aut(css);
    std::size_t good = 0;
    for (int s = 0; s < 50; ++s) {
      if (verify_coset_action(css, random_element(rng, aut), random_bits(rng, css.k()))) ++good;
    }
    ok &= rec.compare(name + " random samples", std::size_t{50}, good);
  }
  r.pass = ok;
}

void synthesis_round_trip(const Fixtures& fx, const SelfcheckOptions& options, CriterionResult& r) {
  Recorder rec(r);
  bool ok = true;
  const auto css22 = fx.css22();
  const std::vector<std::pair<std::string, SynthesisContext>> contexts{
      {"k=7, RM(0,7) in RM(1,7)",
       prepare_synthesis(css_from_pair(reed_muller(1, 7), reed_muller(0, 7)), affine_generators(7))},
      {"k=8, [[22,8,4]]", prepare_synthesis(css22, joint_aut(css22))}};
  for (const auto& [name, ctx] : contexts) {
    const std::size_t total = options.synthesis_targets;
    std::vector<BitMatrix> targets;
    std::mt19937_64 rng(options.seed + ctx.k());
    for (std::size_t i = 0; i < total; ++i) targets.push_back(random_invertible(rng, 2 * ctx.k()));
    std::size_t round_trips = 0, caught = 0;
    std::mutex mu;
    std::size_t next = 0;
    auto worker = [&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(mu);
          if (next == total) return;
          i = next++;
        }
        const LogicalMatrix target(targets[i]);
        bool trip = false, neg = false;
        try {
          const auto w = synthesize(ctx, target);
          trip = verify_word(ctx, w.instructions, {.coset_samples = 1, .seed = i}) == target;
          // Negative control: drop one instruction.
          if (!w.instructions.empty()) {
            auto broken = w.instructions;
            broken.erase(broken.begin() + static_cast<std::ptrdiff_t>((i * 7919) % broken.size()));
            neg = !(verify_word(ctx, broken, {.coset_samples = 0}) == target);
          } else {
            neg = true;
          }
        } catch (const Error&) {
        }
        std::lock_guard lock(mu);
        round_trips += trip;
        caught += neg;
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1U, options.threads); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    ok &= rec.compare(name + ": exact round trips", total, round_trips);
    ok &= rec.compare(name + ": mutated words rejected", total, caught);
  }
  // A non-automorphism in a word is refused.
  const auto& ctx = contexts.back().second;
  bool refused = false;
  try {
    verify_word(ctx, {Instruction::permute(InstructionKind::perm_block1, Permutation::transposition(ctx.n(), 0, 1))});
  } catch (const InvalidArgument&) {
    refused = true;
  }
  ok &= rec.check("word with a non-automorphism refused", refused);
  r.pass = ok;
}

void identities(CriterionResult& r) {
  Recorder rec(r);
  bool ok = true;
  for (std::uint32_t q : {2U, 3U, 4U}) {
    const auto rep = identity_report(q);
    const std::string f = "GF(" + std::to_string(q) + ")";
    ok &= rec.compare(f + " commutator identity failures of " + std::to_string(rep.commutator_cases), std::size_t{0},
                      rep.commutator_failures);
    ok &= rec.compare(f + " diag(t,1/t,1,1) failures", std::size_t{0}, rep.one_block_failures.size());
    ok &= rec.compare(f + " diag(t,1,1/t,1) failures", std::size_t{0}, rep.two_block_failures.size());
    if (!rep.one_block_failures.empty()) {
      r.note += f + ": the six-factor product fails for " + std::to_string(rep.one_block_failures.size()) +
                " value(s) of t and equals diag(1/t,t,1,1) for " + std::to_string(rep.one_block_gives_inverse.size()) +
                " of them; it only matches when t = 1/t, which holds in GF(2) and GF(3). ";
    }
  }
  r.pass = ok;
}

void oracle_equivalence(const SelfcheckOptions& options, CriterionResult& r) {
  Recorder rec(r);
  std::mt19937_64 rng(options.seed);
  std::size_t agree = 0;
  for (std::size_t t = 0; t < options.random_codes; ++t) {
    const std::size_t n = 3 + rng() % 6;
    const std::size_t k = 1 + rng() % (n - 1);
    std::vector<BitVector> rows;
    for (std::size_t i = 0; i < k; ++i) rows.push_back(random_bits(rng, n));
    const auto c = LinearCode::from_span(BitMatrix(rows, n));
    const auto fast = automorphism_group(c);
    const auto brute = brute_force_aut(c);
    bool same = fast.order() == brute.order();
    for (const auto& g : fast.generators()) same = same && brute.contains(g);
    agree += same;
  }
  bool ok = rec.compare("random codes n <= 8: search = exhaustive", options.random_codes, agree);
  std::size_t stab_agree = 0;
  const std::size_t stab_count = 30;
  for (std::size_t t = 0; t < stab_count; ++t) {
    const std::size_t n = 2 + rng() % 5;
    const std::size_t k = rng() % n;
    const auto s = random_stabilizer(rng, n, k);
    const auto fast = stab_aut_group(s);
    const auto brute = stab_brute_force_aut(s);
    bool same = fast.order() == brute.order();
    for (const auto& g : fast.generators()) same = same && brute.contains(g);
    stab_agree += same;
  }
  ok &= rec.compare("random stabilizer codes n <= 6: search = exhaustive", stab_count, stab_agree);
  r.pass = ok;
}

void phase(const Fixtures& fx, CriterionResult& r) {
  Recorder rec(r);
  bool ok = rec.check("[15,4,8] doubly even", classify(fx.code("simplex_15_4.code")).doubly_even);
  std::size_t cosets = 0;
  try {
    cosets = phase_action(fx.css15()).residues.size();
  } catch (const Error&) {
  }
  ok &= rec.compare("[[15,7,3]] cosets with a constant residue mod 4", std::size_t{128}, cosets);
  bool rejected = false;
  try {
    phase_action(fx.css22());
  } catch (const InvalidArgument&) {
    rejected = true;
  }
  ok &= rec.check("[[22,8,4]] rejected as not doubly even", rejected);
  r.pass = ok;
}

void families(CriterionResult& r) {
  Recorder rec(r);
  std::vector<std::size_t> degrees;
  for (const auto& f : factor_cyclic(31)) degrees.push_back(static_cast<std::size_t>(f.degree()));
  std::sort(degrees.begin(), degrees.end());
  bool ok = rec.compare("factor degrees of x^31 - 1", join({1, 5, 5, 5, 5, 5, 5}), join(degrees));
  const auto s = cyclic_block_structure(bch_31_21_spec(), bch_31_21_spec().dual());
  ok &= rec.compare("[[31,11,5]] cyclic blocks", join({5, 5, 1}), join(s.factor_degrees()));
  for (const auto& [rr, ss, m] : {std::tuple{1, 1, 3}, std::tuple{1, 2, 4}, std::tuple{0, 1, 4}}) {
    ok &= rec.check("RM block check (r,s,m) = (" + std::to_string(rr) + "," + std::to_string(ss) + "," +
                        std::to_string(m) + ")",
                    rm_block_check(rr, ss, m));
  }
  r.pass = ok;
}

const char* title(int id) {
  switch (id) {
    case 1: return "automorphism group orders";
    case 2: return "[15,4,8] order and the stated 21600";
    case 3: return "logical action matches the published generators";
    case 4: return "[[8,3,3]] symplectic representation";
    case 5: return "[[22,8,4]] full algebra and SL(16,2)";
    case 6: return "[[15,7,3]] structure";
    case 7: return "[[31,11,5]] structure";
    case 8: return "coset-state simulation";
    case 9: return "synthesis round trip";
    case 10: return "small-field identities";
    case 11: return "search agrees with exhaustive filters";
    case 12: return "phase action";
    case 13: return "code family checks";
  }
  return "";
}

}  // namespace

CriterionResult run_criterion(int id, const SelfcheckOptions& options) {
  CriterionResult r;
  r.id = id;
  r.title = title(id);
  if (r.title.empty()) throw InvalidArgument("no criterion " + std::to_string(id));
  const Fixtures fx{options.data_dir};
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: aut_orders(fx, r); break;
      case 2: simplex_order(fx, r); break;
      case 3: t1_fidelity(fx, r); break;
      case 4: symplectic(fx, r); break;
      case 5: code22_pipeline(fx, r); break;
      case 6: code15_structure(fx, r); break;
      case 7: code31_structure(fx, r); break;
      case 8: coset_simulation(fx, options.seed, r); break;
      case 9: synthesis_round_trip(fx, options, r); break;
      case 10: identities(r); break;
      case 11: oracle_equivalence(options, r); break;
      case 12: phase(fx, r); break;
      case 13: families(r); break;
    }
  } catch (const std::exception& e) {
    r.pass = false;
    r.note += std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_selfcheck(const SelfcheckOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    if (options.only.empty() || options.only.count(id)) out.push_back(run_criterion(id, options));
  }
  return out;
}

}  // namespace cssaut
