#include "cssaut/synthesis.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "cssaut/automorphism.hpp"
#include "cssaut/errors.hpp"

namespace cssaut {

std::string to_string(InstructionKind kind) {
  switch (kind) {
    case InstructionKind::perm_block1: return "perm_block1";
    case InstructionKind::perm_block2: return "perm_block2";
    case InstructionKind::cnot_1to2: return "cnot_1to2";
    case InstructionKind::cnot_2to1: return "cnot_2to1";
  }
  return "?";
}

InstructionKind parse_instruction_kind(const std::string& text) {
  for (auto kind : {InstructionKind::perm_block1, InstructionKind::perm_block2, InstructionKind::cnot_1to2,
                    InstructionKind::cnot_2to1}) {
    if (to_string(kind) == text) return kind;
  }
  throw ParseError("unknown instruction kind '" + text + "'");
}

Instruction Instruction::permute(InstructionKind kind, Permutation p) {
  Instruction out;
  out.kind = kind;
  out.perm = std::move(p);
  if (!out.is_perm()) throw InvalidArgument("a CNOT instruction carries no permutation");
  return out;
}

Instruction Instruction::cnot(InstructionKind kind) {
  Instruction out;
  out.kind = kind;
  if (out.is_perm()) throw InvalidArgument("a permutation instruction needs a permutation");
  return out;
}

WordCost InstructionWord::cost(std::size_t n) const {
  WordCost c;
  for (const auto& ins : instructions) {
    if (ins.is_perm()) {
      ++c.permutations;
    } else {
      ++c.cnot_instructions;
    }
  }
  c.two_qubit_gates = c.cnot_instructions * n;
  return c;
}

BitMatrix Transvection::matrix() const {
  if (row == col || row >= size || col >= size) throw InvalidArgument("transvection needs distinct indices in range");
  return BitMatrix::identity(size).with_flipped(row, col);
}

std::vector<Transvection> transvection_factorization(const BitMatrix& m) {
  if (!m.is_square()) throw InvalidArgument("transvection factorization needs a square matrix");
  const std::size_t n = m.rows();
  std::vector<BitVector> rows = m.row_vectors();
  // Row operations E_s ... E_1 M = I; every E is its own inverse, so
  // M = E_1 E_2 ... E_s.
  std::vector<Transvection> ops;
  auto add_row = [&](std::size_t target, std::size_t source) {
    rows[target] ^= rows[source];
    ops.push_back({target, source, n});
  };
  for (std::size_t c = 0; c < n; ++c) {
    if (!rows[c].get(c)) {
      std::size_t r = c + 1;
      while (r < n && !rows[r].get(c)) ++r;
      if (r == n) throw InvalidArgument("matrix is singular");
      add_row(c, r);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r != c && rows[r].get(c)) add_row(r, c);
    }
  }
  return ops;
}

// ---------------------------------------------------------------------------

SynthesisContext prepare_synthesis(const CssCode& css, const std::vector<Permutation>& aut_generators) {
  SynthesisContext ctx;
  ctx.css = css;
  const std::size_t k = css.k();
  if (k == 0) throw InvalidArgument("synthesis needs at least one logical qubit");
  std::vector<BitMatrix> gen_labels;
  for (const auto& g : aut_generators) {
    if (g.degree() != css.n()) throw DimensionError("automorphism degree does not match the code length");
    ctx.generators.push_back(g);
    gen_labels.push_back(label_action(css, g));
  }
  // Closure of the span under multiplication by generators on both sides;
  // every element added is a group element with a known permutation.
  EchelonBasis span(k * k);
  auto offer = [&](Permutation p, BitMatrix label) {
    if (span.insert(label.flatten())) {
      ctx.span_perms.push_back(std::move(p));
      ctx.span_labels.push_back(std::move(label));
    }
  };
  offer(Permutation::identity(css.n()), BitMatrix::identity(k));
  for (std::size_t i = 0; i < ctx.generators.size(); ++i) offer(ctx.generators[i], gen_labels[i]);
  for (std::size_t head = 0; head < ctx.span_perms.size(); ++head) {
    const Permutation pa = ctx.span_perms[head];
    const BitMatrix la = ctx.span_labels[head];
    for (std::size_t i = 0; i < ctx.generators.size(); ++i) {
      // L(compose(p, q)) = L(q) L(p).
      offer(compose(ctx.generators[i], pa), la * gen_labels[i]);
      offer(compose(pa, ctx.generators[i]), gen_labels[i] * la);
    }
  }
  std::vector<BitVector> flat;
  for (const auto& l : ctx.span_labels) flat.push_back(l.flatten());
  ctx.span_solver = BasisSolver(BitMatrix(flat, k * k));
  return ctx;
}

namespace {

BitMatrix diag_blocks(const BitMatrix& a, const BitMatrix& d) {
  return BitMatrix::from_blocks(a, BitMatrix(a.rows(), d.cols()), BitMatrix(d.rows(), a.cols()), d);
}

// Label matrices of permutations, computed once per call.
class LabelCache {
 public:
  explicit LabelCache(const CssCode& css) : css_(css) {}
  const BitMatrix& get(const Permutation& p) {
    auto it = cache_.find(p);
    if (it == cache_.end()) it = cache_.emplace(p, label_action(css_, p)).first;
    return it->second;
  }

 private:
  const CssCode& css_;
  std::unordered_map<Permutation, BitMatrix, PermutationHash> cache_;
};

BitMatrix instruction_matrix(const Instruction& ins, std::size_t k, LabelCache& labels) {
  const auto id = BitMatrix::identity(k);
  switch (ins.kind) {
    case InstructionKind::perm_block1: return diag_blocks(labels.get(*ins.perm), id);
    case InstructionKind::perm_block2: return diag_blocks(id, labels.get(*ins.perm));
    case InstructionKind::cnot_1to2: return transversal_cnot(k, CnotDirection::first_controls).m;
    case InstructionKind::cnot_2to1: return transversal_cnot(k, CnotDirection::second_controls).m;
  }
  return {};
}

BitMatrix product(const std::vector<Instruction>& instructions, std::size_t k, LabelCache& labels) {
  BitMatrix out = BitMatrix::identity(2 * k);
  for (const auto& ins : instructions) out = instruction_matrix(ins, k, labels) * out;
  return out;
}

void append(std::vector<Instruction>& out, const std::vector<Instruction>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

// Off-diagonal word without cleanup or effect.
std::vector<Instruction> offdiag_instructions(const SynthesisContext& ctx, const BitMatrix& a, BlockSide side) {
  const std::size_t k = ctx.k();
  if (a.rows() != k || a.cols() != k) throw DimensionError("off-diagonal block must be k x k");
  std::vector<Instruction> out;
  if (a.is_zero()) return out;
  const auto coords = ctx.span_solver.coordinates(a.flatten());
  if (!coords) throw InfeasibleError("block is not a sum of label-group elements");
  const auto block = side == BlockSide::upper ? InstructionKind::perm_block1 : InstructionKind::perm_block2;
  const auto cnot = side == BlockSide::upper ? InstructionKind::cnot_2to1 : InstructionKind::cnot_1to2;
  for (std::size_t i = 0; i < ctx.span_perms.size(); ++i) {
    if (!coords->get(i)) continue;
    const auto& p = ctx.span_perms[i];
    // perm^{-1}, CNOT, perm: diag(L,I) (I I; 0 I) diag(L,I)^{-1} = (I L; 0 I).
    if (!p.is_identity()) out.push_back(Instruction::permute(block, p.inverse()));
    out.push_back(Instruction::cnot(cnot));
    if (!p.is_identity()) out.push_back(Instruction::permute(block, p));
  }
  return out;
}

std::vector<Instruction> diagonal_instructions(const SynthesisContext& ctx, const Transvection& t) {
  const std::size_t k = ctx.k();
  if (t.size != 2 * k) throw DimensionError("transvection size must be 2k");
  if (t.row == t.col) throw InvalidArgument("transvection needs distinct indices");
  const bool first = t.row < k && t.col < k;
  const bool second = t.row >= k && t.col >= k;
  if (!first && !second) throw InvalidArgument("transvection is not inside a diagonal block");
  const std::size_t i = first ? t.row : t.row - k;
  const std::size_t c = first ? t.col : t.col - k;
  // M1 = off-diagonal E_{i,j}, M2 = the other off-diagonal E_{j,c}, j = i.
  // Over GF(2) every factor is an involution, so M2^{-1} M1 M2 M1^{-1}
  // applies M1, M2, M1, M2 in turn.
  const BitMatrix e_ii = BitMatrix(k, k).with_flipped(i, i);
  const BitMatrix e_ic = BitMatrix(k, k).with_flipped(i, c);
  const auto m1 = offdiag_instructions(ctx, e_ii, first ? BlockSide::upper : BlockSide::lower);
  const auto m2 = offdiag_instructions(ctx, e_ic, first ? BlockSide::lower : BlockSide::upper);
  std::vector<Instruction> out;
  for (int rep = 0; rep < 2; ++rep) {
    append(out, m1);
    append(out, m2);
  }
  return out;
}

InstructionWord finish(const SynthesisContext& ctx, std::vector<Instruction> instructions) {
  InstructionWord w;
  w.instructions = peephole(instructions);
  LabelCache labels(ctx.css);
  w.logical_effect = LogicalMatrix(product(w.instructions, ctx.k(), labels));
  return w;
}

}  // namespace

BitMatrix instruction_matrix(const SynthesisContext& ctx, const Instruction& ins) {
  LabelCache labels(ctx.css);
  return instruction_matrix(ins, ctx.k(), labels);
}

InstructionWord realize_offdiag(const SynthesisContext& ctx, const BitMatrix& a, BlockSide side) {
  return finish(ctx, offdiag_instructions(ctx, a, side));
}

InstructionWord lift_diagonal_transvection(const SynthesisContext& ctx, const Transvection& t) {
  return finish(ctx, diagonal_instructions(ctx, t));
}

InstructionWord synthesize(const SynthesisContext& ctx, const LogicalMatrix& target) {
  const std::size_t k = ctx.k();
  if (target.dim() != 2 * k) throw DimensionError("target must be 2k x 2k");
  if (!ctx.full_algebra()) {
    throw UnsupportedError("label matrices span a " + std::to_string(ctx.span_labels.size()) +
                           "-dimensional algebra, not all k x k matrices; analyze the invariant blocks instead");
  }
  const auto factors = transvection_factorization(target.m);
  // Product T_1 ... T_s applies T_s first. Runs of off-diagonal
  // transvections on the same side commute and are realized together.
  std::vector<Instruction> out;
  std::optional<BlockSide> run_side;
  BitMatrix run(k, k);
  auto flush = [&] {
    if (run_side) append(out, offdiag_instructions(ctx, run, *run_side));
    run_side.reset();
    run = BitMatrix(k, k);
  };
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const auto& t = *it;
    std::optional<BlockSide> side;
    if (t.row < k && t.col >= k) side = BlockSide::upper;
    if (t.row >= k && t.col < k) side = BlockSide::lower;
    if (!side) {
      flush();
      append(out, diagonal_instructions(ctx, t));
      continue;
    }
    if (run_side != side) flush();
    run_side = side;
    run = *side == BlockSide::upper ? run.with_flipped(t.row, t.col - k) : run.with_flipped(t.row - k, t.col);
  }
  flush();
  auto w = finish(ctx, std::move(out));
  if (!(w.logical_effect == target)) throw Error("internal: synthesized word does not reproduce the target");
  return w;
}

std::vector<Instruction> peephole(const std::vector<Instruction>& instructions) {
  std::vector<Instruction> out;
  for (const auto& ins : instructions) {
    if (ins.is_perm() && ins.perm->is_identity()) continue;
    if (!out.empty() && out.back().kind == ins.kind) {
      if (!ins.is_perm()) {
        out.pop_back();  // CNOT twice is the identity
        continue;
      }
      Permutation merged = compose(*out.back().perm, *ins.perm);
      out.pop_back();
      if (!merged.is_identity()) out.push_back(Instruction::permute(ins.kind, std::move(merged)));
      continue;
    }
    out.push_back(ins);
  }
  return out;
}

LogicalMatrix verify_word(const SynthesisContext& ctx, const std::vector<Instruction>& instructions,
                          const VerifyOptions& options) {
  const std::size_t k = ctx.k();
  std::mt19937_64 rng(options.seed);
  std::unordered_map<Permutation, bool, PermutationHash> checked;
  LabelCache labels(ctx.css);
  BitMatrix out = BitMatrix::identity(2 * k);
  for (std::size_t idx = 0; idx < instructions.size(); ++idx) {
    const auto& ins = instructions[idx];
    if (ins.is_perm() != ins.perm.has_value()) {
      throw InvalidArgument("instruction " + std::to_string(idx) + " has a malformed permutation field");
    }
    if (ins.is_perm() && !checked.count(*ins.perm)) {
      const auto& p = *ins.perm;
      if (p.degree() != ctx.n() || !is_automorphism(ctx.css.c1, p) || !is_automorphism(ctx.css.c2, p)) {
        throw InvalidArgument("instruction " + std::to_string(idx) + " permutes by a non-automorphism");
      }
      if (ctx.n() <= 15) {
        for (std::size_t s = 0; s < options.coset_samples; ++s) {
          BitVector beta(k);
          for (std::size_t i = 0; i < k; ++i) {
            if (rng() & 1) beta.set(i);
          }
          if (!verify_coset_action(ctx.css, p, beta, labels.get(p))) {
            throw InvalidArgument("instruction " + std::to_string(idx) + " fails the coset simulation");
          }
        }
      }
      checked.emplace(p, true);
    }
    out = instruction_matrix(ins, k, labels) * out;
  }
  return LogicalMatrix(out);
}

nlohmann::json word_to_json(const InstructionWord& word, std::size_t n) {
  nlohmann::json doc;
  doc["format"] = "cssaut-word";
  doc["version"] = 1;
  doc["n"] = n;
  doc["k"] = word.logical_effect.k();
  std::vector<std::string> rows;
  for (const auto& r : word.logical_effect.m.row_vectors()) rows.push_back(r.to_string());
  doc["target"] = rows;
  auto list = nlohmann::json::array();
  for (const auto& ins : word.instructions) {
    nlohmann::json entry{{"kind", to_string(ins.kind)}};
    if (ins.perm) {
      std::vector<std::uint32_t> images;
      for (auto x : ins.perm->images()) images.push_back(x + 1);
      entry["perm"] = images;
    }
    list.push_back(std::move(entry));
  }
  doc["instructions"] = std::move(list);
  const auto c = word.cost(n);
  doc["cost"] = {{"cnot_instructions", c.cnot_instructions},
                 {"two_qubit_gates", c.two_qubit_gates},
                 {"permutations", c.permutations}};
  return doc;
}

std::vector<Instruction> word_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("instructions") || !doc["instructions"].is_array()) {
    throw ParseError("word document needs an 'instructions' array");
  }
  std::vector<Instruction> out;
  for (const auto& entry : doc["instructions"]) {
    if (!entry.is_object() || !entry.contains("kind") || !entry["kind"].is_string()) {
      throw ParseError("instruction needs a 'kind' string");
    }
    const auto kind = parse_instruction_kind(entry["kind"].get<std::string>());
    const bool is_perm = kind == InstructionKind::perm_block1 || kind == InstructionKind::perm_block2;
    if (is_perm != entry.contains("perm")) throw ParseError("'perm' is required exactly for permutation instructions");
    if (!is_perm) {
      out.push_back(Instruction::cnot(kind));
      continue;
    }
    std::vector<std::uint32_t> images;
    for (const auto& v : entry["perm"]) {
      if (!v.is_number_unsigned() || v.get<std::uint32_t>() == 0) throw ParseError("permutation images are 1-based");
      images.push_back(v.get<std::uint32_t>() - 1);
    }
    try {
      out.push_back(Instruction::permute(kind, Permutation(std::move(images))));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Small-field identities.

namespace {

class SmallField {
 public:
  explicit SmallField(std::uint32_t q) : q_(q) {
    if (q != 2 && q != 3 && q != 4) throw InvalidArgument("identity checks support q in {2, 3, 4}");
  }
  std::uint32_t q() const { return q_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return q_ == 4 ? a ^ b : (a + b) % q_; }
  std::uint32_t neg(std::uint32_t a) const { return q_ == 4 ? a : (q_ - a) % q_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (q_ != 4) return (a * b) % q_;
    // Polynomials in w modulo w^2 + w + 1.
    std::uint32_t r = 0;
    for (int i = 0; i < 2; ++i) {
      if ((b >> i) & 1U) r ^= a << i;
    }
    if (r & 4U) r ^= 0b111;
    return r;
  }
  std::uint32_t inv(std::uint32_t a) const {
    for (std::uint32_t x = 1; x < q_; ++x) {
      if (mul(a, x) == 1) return x;
    }
    throw InvalidArgument("zero has no inverse");
  }
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

 private:
  std::uint32_t q_;
};

using Mat = std::vector<std::vector<std::uint32_t>>;

Mat identity_mat(std::size_t n) {
  Mat m(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Mat mul(const SmallField& f, const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat out(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t s = 0;
      for (std::size_t t = 0; t < n; ++t) s = f.add(s, f.mul(a[i][t], b[t][j]));
      out[i][j] = s;
    }
  }
  return out;
}

Mat product(const SmallField& f, const std::vector<Mat>& factors) {
  Mat out = identity_mat(factors.front().size());
  for (const auto& m : factors) out = mul(f, out, m);
  return out;
}

// I + x E_{r,c}.
Mat elementary(std::size_t n, std::size_t r, std::size_t c, std::uint32_t x) {
  Mat m = identity_mat(n);
  m[r][c] = x;
  return m;
}

// Four unipotent factors, transcribed row by row; zero-based indices.
Mat with_entries(std::initializer_list<std::tuple<std::size_t, std::size_t, std::uint32_t>> entries) {
  Mat m = identity_mat(4);
  for (const auto& [r, c, x] : entries) m[r][c] = x;
  return m;
}

}  // namespace

IdentityReport identity_report(std::uint32_t q) {
  const SmallField f(q);
  IdentityReport report;
  report.q = q;
  // Commutator of (I aE_ij; 0 I) and (I 0; bE_jk I) with i != k.
  for (std::size_t s = 2; s <= 4; ++s) {
    const std::size_t n = 2 * s;
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t k = 0; k < s; ++k) {
          if (i == k) continue;
          for (std::uint32_t a = 1; a < q; ++a) {
            for (std::uint32_t b = 1; b < q; ++b) {
              const Mat m1 = elementary(n, i, s + j, a);
              const Mat m1_inv = elementary(n, i, s + j, f.neg(a));
              const Mat m2 = elementary(n, s + j, k, b);
              const Mat m2_inv = elementary(n, s + j, k, f.neg(b));
              const Mat lhs = product(f, {m2_inv, m1, m2, m1_inv});
              const Mat expected = elementary(n, i, k, f.mul(a, b));
              ++report.commutator_cases;
              if (lhs != expected) ++report.commutator_failures;
            }
          }
        }
      }
    }
  }
  for (std::uint32_t t = 1; t < q; ++t) {
    const std::uint32_t ti = f.inv(t);
    const std::uint32_t t_minus_1 = f.sub(t, 1);
    const std::uint32_t one_minus_t = f.sub(1, t);
    // diag(t, 1/t, 1, 1) as a product of six factors.
    const Mat one_block = product(
        f, {with_entries({{3, 1, f.div(t_minus_1, t)}}),
            with_entries({{0, 3, 1}, {1, 3, f.neg(1)}}),
            with_entries({{3, 0, f.div(one_minus_t, t)}}),
            with_entries({{0, 3, f.neg(t)}}),
            with_entries({{3, 0, f.div(t_minus_1, f.mul(t, t))}, {3, 1, f.div(one_minus_t, t)}}),
            with_entries({{1, 3, 1}})});
    Mat d1 = identity_mat(4);
    d1[0][0] = t;
    d1[1][1] = ti;
    if (one_block != d1) {
      report.one_block_failures.push_back(t);
      Mat swapped = identity_mat(4);
      swapped[0][0] = ti;
      swapped[1][1] = t;
      if (one_block == swapped) report.one_block_gives_inverse.push_back(t);
    }
    // diag(t, 1, 1/t, 1) as a product of four factors.
    const Mat two_blocks = product(f, {with_entries({{0, 2, t_minus_1}}), with_entries({{2, 0, 1}}),
                                       with_entries({{0, 2, f.div(one_minus_t, t)}}),
                                       with_entries({{2, 0, f.neg(t)}})});
    Mat d2 = identity_mat(4);
    d2[0][0] = t;
    d2[2][2] = ti;
    if (two_blocks != d2) report.two_block_failures.push_back(t);
  }
  return report;
}

}  // namespace cssaut
