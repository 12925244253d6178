#pragma once

// Compiling two-block logical matrices into physical schedules of
// automorphism permutations and transversal CNOTs.
//
// Instructions apply left to right. A word w1 followed by w2 has logical
// effect L(w2) L(w1) on column labels (b1, b2).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cssaut/codes.hpp"
#include "cssaut/logical_action.hpp"
#include "cssaut/perm_group.hpp"

namespace cssaut {

enum class InstructionKind { perm_block1, perm_block2, cnot_1to2, cnot_2to1 };

std::string to_string(InstructionKind kind);
InstructionKind parse_instruction_kind(const std::string& text);

struct Instruction {
  InstructionKind kind = InstructionKind::cnot_1to2;
  std::optional<Permutation> perm;  // present iff kind is a permutation

  static Instruction permute(InstructionKind kind, Permutation p);
  static Instruction cnot(InstructionKind kind);
  bool is_perm() const noexcept {
    return kind == InstructionKind::perm_block1 || kind == InstructionKind::perm_block2;
  }
  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct WordCost {
  std::size_t cnot_instructions = 0;
  std::size_t two_qubit_gates = 0;  // n per transversal CNOT
  std::size_t permutations = 0;
};

struct InstructionWord {
  std::vector<Instruction> instructions;
  LogicalMatrix logical_effect;

  std::size_t size() const noexcept { return instructions.size(); }
  WordCost cost(std::size_t n) const;
};

/// I + E_{row,col} of the given size.
struct Transvection {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t size = 0;
  BitMatrix matrix() const;
};

/// Transvections whose product, left to right, is m. Length at most size^2.
/// Throws InvalidArgument for singular or non-square input.
std::vector<Transvection> transvection_factorization(const BitMatrix& m);

/// Automorphism data prepared once per code: a set of automorphisms whose
/// label matrices form a basis of the algebra spanned by the label group,
/// each one a known product of generators.
struct SynthesisContext {
  CssCode css;
  std::vector<Permutation> generators;
  std::vector<Permutation> span_perms;
  std::vector<BitMatrix> span_labels;
  BasisSolver span_solver{BitMatrix()};

  std::size_t n() const { return css.n(); }
  std::size_t k() const { return css.k(); }
  bool full_algebra() const { return span_labels.size() == k() * k(); }
};

SynthesisContext prepare_synthesis(const CssCode& css, const std::vector<Permutation>& aut_generators);
inline SynthesisContext prepare_synthesis(const CssCode& css, const PermGroup& aut) {
  return prepare_synthesis(css, aut.generators());
}

enum class BlockSide { upper, lower };

/// Logical matrix of a single instruction.
BitMatrix instruction_matrix(const SynthesisContext& ctx, const Instruction& ins);

/// A word with effect (I A; 0 I) (upper) or (I 0; A I) (lower), as a product
/// of CNOTs conjugated by automorphisms of one block. Throws InfeasibleError
/// when A is outside the span of the label group.
InstructionWord realize_offdiag(const SynthesisContext& ctx, const BitMatrix& a, BlockSide side);

/// A transvection inside one diagonal block (both indices < k, or both >= k),
/// as the commutator of an upper and a lower off-diagonal word.
InstructionWord lift_diagonal_transvection(const SynthesisContext& ctx, const Transvection& t);

/// Throws UnsupportedError when the label algebra is not the full matrix
/// algebra, InvalidArgument when the target has the wrong size.
InstructionWord synthesize(const SynthesisContext& ctx, const LogicalMatrix& target);

/// Cancels adjacent equal CNOTs, merges adjacent permutations of the same
/// block and drops identity permutations.
std::vector<Instruction> peephole(const std::vector<Instruction>& instructions);

struct VerifyOptions {
  /// Coset-state simulations per permutation instruction (codes with n <= 15).
  std::size_t coset_samples = 4;
  std::uint64_t seed = 1;
};

/// Recomputes the logical effect from the instructions alone. Throws
/// InvalidArgument for a permutation that is not an automorphism of both
/// codes or a failed coset simulation.
LogicalMatrix verify_word(const SynthesisContext& ctx, const std::vector<Instruction>& instructions,
                          const VerifyOptions& options = {});

nlohmann::json word_to_json(const InstructionWord& word, std::size_t n);
/// Reads the instructions and target back; the effect is recomputed by the caller.
std::vector<Instruction> word_from_json(const nlohmann::json& doc);

// Small-field identity checks for the SL generation argument.

struct IdentityReport {
  std::uint32_t q = 0;
  std::size_t commutator_cases = 0;
  std::size_t commutator_failures = 0;
  /// Values of t (as field element codes) for which each factorization fails.
  std::vector<std::uint32_t> one_block_failures;
  std::vector<std::uint32_t> two_block_failures;
  /// Failing t for which the six-factor product is diag(1/t, t, 1, 1) instead.
  std::vector<std::uint32_t> one_block_gives_inverse;
  bool ok() const noexcept {
    return commutator_failures == 0 && one_block_failures.empty() && two_block_failures.empty();
  }
};

/// q in {2, 3, 4}. Elements of GF(4) are coded 0, 1, 2 = w, 3 = w^2 = w + 1.
IdentityReport identity_report(std::uint32_t q);
inline bool check_identities(std::uint32_t q) { return identity_report(q).ok(); }

}  // namespace cssaut
