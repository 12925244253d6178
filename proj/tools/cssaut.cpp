// Command-line front end. Each subcommand loads its inputs, calls the
// library and renders the result as text or JSON.
//
// Exit codes: 0 success, 1 mismatch or unsupported request, 2 usage or input
// error, 3 capacity or budget exhausted.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cssaut/automorphism.hpp"
#include "cssaut/errors.hpp"
#include "cssaut/group_analysis.hpp"
#include "cssaut/selfcheck.hpp"
#include "cssaut/stabilizer.hpp"
#include "cssaut/synthesis.hpp"

using json = nlohmann::ordered_json;
using namespace cssaut;

namespace {

constexpr const char* kVersion = "1.0.0";

struct Global {
  bool json_out = false;
  bool no_meta = false;
  unsigned threads = 1;
};

// Input files are identified by an FNV-1a digest of their bytes.
std::string digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 1469598103934665603ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string big(const BigInt& v) { return v.str(); }

json perm_json(const Permutation& p) {
  json out = json::array();
  for (auto x : p.images()) out.push_back(x + 1);
  return out;
}

json matrix_json(const BitMatrix& m) {
  json out = json::array();
  for (const auto& r : m.row_vectors()) out.push_back(r.to_string());
  return out;
}

json group_json(const MatrixGroup& g) {
  return {{"order", big(g.order())},
          {"log2_order", std::log2(g.order().convert_to<double>())},
          {"exact", g.exact()},
          {"certificate", g.certificate()}};
}

class Report {
 public:
  Report(std::string command, std::string argv, const Global& g)
      : g_(g), argv_(std::move(argv)), start_(std::chrono::steady_clock::now()) {
    doc_["command"] = std::move(command);
    doc_["inputs"] = json::array();
    doc_["results"] = json::object();
  }
  void input(const std::string& path) { doc_["inputs"].push_back({{"path", path}, {"digest", digest(path)}}); }
  json& results() { return doc_["results"]; }
  void claim(const std::string& text, const std::string& expected, const std::string& computed, ClaimStatus status) {
    doc_["claims"].push_back({{"claim", text}, {"expected", expected}, {"computed", computed}, {"status", to_string(status)}});
  }

  void emit(std::ostream& out) {
    if (!g_.no_meta) {
      const auto now = std::time(nullptr);
      char stamp[32];
      std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
      doc_["meta"] = {{"version", kVersion},
                      {"argv", argv_},
                      {"timestamp", stamp},
                      {"elapsed_seconds",
                       std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count()}};
    }
    if (g_.json_out) {
      out << doc_.dump(2) << "\n";
      return;
    }
    render(out, doc_, 0);
  }

 private:
  static void render(std::ostream& out, const json& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (auto it = v.begin(); it != v.end(); ++it) {
      const auto& value = it.value();
      const std::string key = v.is_object() ? it.key() : "-";
      if (value.is_object()) {
        out << pad << key << ":\n";
        render(out, value, indent + 2);
      } else if (value.is_array() && !value.empty() && (value.front().is_structured())) {
        out << pad << key << ":\n";
        for (const auto& e : value) {
          if (e.is_object()) {
            out << pad << "  -\n";
            render(out, e, indent + 4);
          } else {
            out << pad << "  - " << scalar_list(e) << "\n";
          }
        }
      } else if (value.is_array()) {
        const bool rows = !value.empty() && value.front().is_string() && value.size() > 1;
        if (rows) {
          out << pad << key << ":\n";
          for (const auto& e : value) out << pad << "  " << e.get<std::string>() << "\n";
        } else {
          out << pad << key << ": " << scalar_list(value) << "\n";
        }
      } else {
        out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
  }
  static std::string scalar_list(const json& a) {
    std::string s;
    for (const auto& e : a) s += (s.empty() ? "" : " ") + (e.is_string() ? e.get<std::string>() : e.dump());
    return s;
  }

  const Global& g_;
  std::string argv_;
  std::chrono::steady_clock::time_point start_;
  json doc_;
};

CssCode load_css(Report& r, const std::string& f1, const std::string& f2) {
  r.input(f1);
  r.input(f2);
  return css_from_pair(read_code_file(f1), read_code_file(f2));
}

json css_json(const CssCode& css) {
  const auto p = css_parameters(css);
  return {{"n", p.n}, {"k", p.k}, {"d", p.d}};
}

// ---------------------------------------------------------------------------

int cmd_info(Report& r, const std::string& file) {
  r.input(file);
  const auto c = read_code_file(file);
  const auto cls = classify(c);
  auto& out = r.results();
  out["n"] = c.n();
  out["k"] = c.k();
  out["d"] = minimum_distance(c);
  out["dual_dimension"] = c.n() - c.k();
  out["weight_distribution"] = weight_distribution(c);
  out["self_orthogonal"] = cls.self_orthogonal;
  out["doubly_even"] = cls.doubly_even;
  out["contains_all_one"] = cls.contains_all_one;
  return 0;
}

int cmd_aut(Report& r, const std::string& file, bool brute, std::optional<std::uint64_t> budget) {
  r.input(file);
  const auto c = read_code_file(file);
  auto& out = r.results();
  out["n"] = c.n();
  out["k"] = c.k();
  auto write_group = [&](const PermGroup& g) {
    out["order"] = big(g.order());
    out["generators"] = json::array();
    for (const auto& p : g.generators()) out["generators"].push_back(perm_json(p));
    json base = json::array();
    for (auto b : g.base()) base.push_back(b + 1);
    out["base"] = base;
  };
  if (brute) {
    out["method"] = "exhaustive";
    write_group(brute_force_aut(c));
    return 0;
  }
  out["method"] = "search";
  SearchOptions options;
  if (budget) options.node_budget = *budget;
  SearchStats stats;
  try {
    write_group(automorphism_group(c, options, &stats));
  } catch (const SearchExhausted& e) {
    out["exhausted"] = true;
    out["partial_order"] = big(e.partial().order());
    out["node_budget"] = options.node_budget;
    return 3;
  }
  out["nodes"] = stats.nodes;
  out["blocks"] = stats.blocks;
  return 0;
}

int cmd_logical(Report& r, const std::string& f1, const std::string& f2, const std::string& perm_file) {
  const auto css = load_css(r, f1, f2);
  auto& out = r.results();
  out["code"] = css_json(css);
  std::vector<Permutation> perms;
  if (!perm_file.empty()) {
    r.input(perm_file);
    const auto p = read_permutation_file(perm_file);
    if (p.degree() != css.n()) throw DimensionError("permutation degree does not match the code length");
    const bool ok = is_automorphism(css.c1, p) && is_automorphism(css.c2, p);
    out["automorphism"] = ok;
    if (!ok) return 1;
    perms.push_back(p);
  } else {
    const auto aut = intersect_aut(css.c1, css.c2);
    out["aut_order"] = big(aut.order());
    perms = aut.generators();
  }
  out["actions"] = json::array();
  for (const auto& p : perms) {
    const auto a = induced_action(css, p);
    out["actions"].push_back({{"perm", perm_json(p)}, {"t1", matrix_json(a.t1)}, {"label", matrix_json(a.t1.transpose())}});
  }
  return 0;
}

int cmd_analyze(Report& r, const std::string& f1, const std::string& f2) {
  const auto css = load_css(r, f1, f2);
  auto& out = r.results();
  out["code"] = css_json(css);
  const auto aut = intersect_aut(css.c1, css.c2);
  out["aut_order"] = big(aut.order());
  const std::size_t k = css.k();
  if (k == 0) return 0;
  G12Options options;
  options.first_block_subgroup = true;
  const auto g12 = build_g12(css, aut, options);
  MatrixGroupOptions g1_options;
  g1_options.decomposition = g12.g1_structure.decomposition;
  out["label_group"] = group_json(MatrixGroup(k, g12.label_generators, g1_options));
  const auto span = algebra_span(g12.label_generators);
  out["algebra_dimension"] = span.dimension();
  out["full_algebra"] = span.full();
  json dims = json::array();
  for (const auto& s : g12.g1_structure.found) dims.push_back(s.rows());
  out["invariant_subspace_dimensions"] = dims;
  out["block_dimensions"] = g12.g1_structure.chain.block_dims();
  out["g12"] = group_json(g12.group);
  out["g12"]["sl_2k_order"] = big(sl_order(2 * k, 2));
  out["g12"]["equals_sl_2k"] = g12.group.order() == sl_order(2 * k, 2);
  if (g12.first_block_subgroup) out["first_block_subgroup"] = group_json(*g12.first_block_subgroup);
  // Histogram of weight residues mod 4 over all coset labels.
  if (k <= 16) {
    try {
      const auto phase = phase_action(css);
      std::vector<std::size_t> histogram(4, 0);
      for (auto v : phase.residues) ++histogram[v % 4];
      out["phase_residue_counts"] = histogram;
    } catch (const InvalidArgument& e) {
      out["phase_residue_counts"] = std::string("not applicable: ") + e.what();
    }
  }
  const auto fourier = fourier_report(css);
  out["fourier"] = {{"applicable", fourier.applicable}, {"effect", fourier.effect}};
  return 0;
}

int cmd_stab(Report& r, const std::string& file) {
  r.input(file);
  const auto code = read_stabilizer_file(file);
  auto& out = r.results();
  out["n"] = code.n;
  out["k"] = code.k;
  const auto aut = stab_aut_group(code);
  out["aut_order"] = big(aut.order());
  out["generators"] = json::array();
  for (const auto& p : aut.generators()) {
    out["generators"].push_back({{"perm", perm_json(p)}, {"symplectic", matrix_json(stab_symplectic_rep(code, p))}});
  }
  std::size_t symplectic = 0, preserved = 0;
  const auto elements = aut.elements();
  const std::size_t kk = code.k;
  for (const auto& p : elements) {
    const auto m = stab_symplectic_rep(code, p);
    symplectic += is_symplectic(m);
    preserved += kk == 0 || m.block(0, kk, kk, kk).is_zero();
  }
  out["all_images_symplectic"] = symplectic == elements.size();
  out["logical_x_space_preserved"] = preserved == elements.size();
  const auto labels = affine_labeling(aut);
  if (labels.empty()) {
    out["affine_labeling"] = nullptr;
  } else {
    out["affine_labeling"] = labels;
  }
  return 0;
}

int cmd_synth(Report& r, const std::string& f1, const std::string& f2, const std::string& target_file,
              const std::string& out_file) {
  const auto css = load_css(r, f1, f2);
  r.input(target_file);
  const LogicalMatrix target(read_matrix_file(target_file));
  const auto ctx = prepare_synthesis(css, intersect_aut(css.c1, css.c2));
  const auto word = synthesize(ctx, target);
  const bool verified = verify_word(ctx, word.instructions) == target;
  auto& out = r.results();
  out["code"] = css_json(css);
  out["instructions"] = word.size();
  const auto c = word.cost(css.n());
  out["cost"] = {{"cnot_instructions", c.cnot_instructions},
                 {"two_qubit_gates", c.two_qubit_gates},
                 {"permutations", c.permutations}};
  out["verified"] = verified;
  const auto doc = word_to_json(word, css.n());
  if (out_file.empty()) {
    out["word"] = json::parse(doc.dump());
  } else {
    std::ofstream f(out_file);
    if (!f) throw ParseError("cannot write '" + out_file + "'");
    f << doc.dump() << "\n";
    out["word_file"] = out_file;
  }
  return verified ? 0 : 1;
}

int cmd_verify(Report& r, const std::string& f1, const std::string& f2, const std::string& word_file,
               const std::string& target_file) {
  const auto css = load_css(r, f1, f2);
  r.input(word_file);
  std::ifstream in(word_file);
  if (!in) throw ParseError("cannot open word file '" + word_file + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("word file is not JSON: ") + e.what());
  }
  const auto instructions = word_from_json(doc);
  const auto ctx = prepare_synthesis(css, std::vector<Permutation>{});
  const auto effect = verify_word(ctx, instructions);
  auto& out = r.results();
  out["instructions"] = instructions.size();
  out["effect"] = matrix_json(effect.m);
  std::optional<BitMatrix> target;
  if (!target_file.empty()) {
    r.input(target_file);
    target = read_matrix_file(target_file);
  } else if (doc.contains("target")) {
    std::vector<std::string> rows = doc["target"].get<std::vector<std::string>>();
    target = BitMatrix::from_strings(rows);
  }
  if (!target) return 0;
  const bool match = *target == effect.m;
  out["matches_target"] = match;
  return match ? 0 : 1;
}

int cmd_families_rm(Report& r, std::size_t rr, std::size_t s, std::size_t m) {
  auto& out = r.results();
  out["family"] = "reed-muller";
  out["r"] = rr;
  out["s"] = s;
  out["m"] = m;
  const bool ok = rm_block_check(rr, s, m);
  out["degree_blocks_preserved"] = ok;
  return ok ? 0 : 1;
}

int cmd_families_cyclic(Report& r, std::size_t n, const std::string& g1, const std::string& g2) {
  const CyclicCodeSpec outer{n, Gf2Poly::parse(g1)};
  outer.validate();
  const CyclicCodeSpec inner = g2.empty() ? outer.dual() : CyclicCodeSpec{n, Gf2Poly::parse(g2)};
  const auto s = cyclic_block_structure(outer, inner);
  auto& out = r.results();
  out["family"] = "cyclic";
  out["n"] = n;
  out["g1"] = outer.g.to_string();
  out["g2"] = inner.g.to_string();
  out["h"] = s.h.to_string();
  out["blocks"] = json::array();
  for (const auto& b : s.blocks) {
    out["blocks"].push_back({{"factor", b.factor.to_string()},
                             {"degree", b.degree},
                             {"n_at_least_degree_squared", b.spanning_possible},
                             {"shift_algebra_dimension", b.shift_algebra_dim}});
  }
  out["degrees"] = s.factor_degrees();
  return 0;
}

int cmd_selfcheck(Report& r, const Global& g, const std::string& data_dir, const std::vector<int>& only,
                  std::size_t targets) {
  SelfcheckOptions options;
  options.data_dir = data_dir;
  options.threads = g.threads;
  options.synthesis_targets = targets;
  options.only.insert(only.begin(), only.end());
  for (const auto& c : only) {
    if (c < 1 || c > kCriterionCount) throw InvalidArgument("no criterion " + std::to_string(c));
  }
  auto& out = r.results();
  out["criteria"] = json::array();
  bool all = true;
  for (const auto& c : run_selfcheck(options)) {
    all &= c.pass;
    json entry{{"id", c.id}, {"title", c.title}, {"pass", c.pass}};
    if (!c.note.empty()) entry["note"] = c.note;
    if (!g.no_meta) entry["seconds"] = c.seconds;
    out["criteria"].push_back(entry);
    for (const auto& claim : c.claims) r.claim(claim.claim, claim.expected, claim.computed, claim.status);
  }
  out["all_pass"] = all;
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Automorphisms, logical actions and transversal gate synthesis for CSS and stabilizer codes"};
  app.fallthrough();
  app.require_subcommand(1);
  Global g;
  app.add_flag("--json", g.json_out, "Print the report as JSON");
  app.add_flag("--no-meta", g.no_meta, "Omit timestamps, timings and version from the report");
  app.add_option("--threads", g.threads, "Worker threads for batch work")->check(CLI::Range(1U, 256U));
  app.set_version_flag("--version", kVersion);

  std::string f1, f2, extra, extra2, data_dir = CSSAUT_DEFAULT_DATA_DIR;
  bool brute = false;
  std::optional<std::uint64_t> budget;
  std::size_t rr = 0, s = 1, m = 0, n = 0, targets = 100;
  std::string g1, g2;
  std::vector<int> only;

  auto* info = app.add_subcommand("info", "Parameters and weight distribution of a code file");
  info->add_option("codefile", f1)->required()->check(CLI::ExistingFile);
  auto* aut = app.add_subcommand("aut", "Permutation automorphism group of a code");
  aut->add_option("codefile", f1)->required()->check(CLI::ExistingFile);
  aut->add_flag("--brute-force", brute, "Filter all n! permutations (n <= 8)");
  aut->add_option("--node-budget", budget, "Search node budget (default from CSSAUT_NODE_BUDGET)");
  auto* logical = app.add_subcommand("logical", "Logical action of joint automorphisms of a nested pair");
  logical->add_option("codefile1", f1, "Outer code")->required()->check(CLI::ExistingFile);
  logical->add_option("codefile2", f2, "Inner code")->required()->check(CLI::ExistingFile);
  logical->add_option("--perm", extra, "Permutation file")->check(CLI::ExistingFile);
  auto* analyze = app.add_subcommand("analyze", "Structure of the logical action and of the two-block group");
  analyze->add_option("codefile1", f1)->required()->check(CLI::ExistingFile);
  analyze->add_option("codefile2", f2)->required()->check(CLI::ExistingFile);
  auto* stab = app.add_subcommand("stab", "Automorphisms and symplectic representation of a stabilizer code");
  stab->add_option("stabfile", f1)->required()->check(CLI::ExistingFile);
  auto* synth = app.add_subcommand("synth", "Compile a 2k x 2k logical matrix into permutations and CNOTs");
  synth->add_option("codefile1", f1)->required()->check(CLI::ExistingFile);
  synth->add_option("codefile2", f2)->required()->check(CLI::ExistingFile);
  synth->add_option("--target", extra, "Matrix file")->required()->check(CLI::ExistingFile);
  synth->add_option("--out", extra2, "Write the word to this file instead of the report");
  auto* verify = app.add_subcommand("verify", "Recompute the logical effect of an instruction word");
  verify->add_option("codefile1", f1)->required()->check(CLI::ExistingFile);
  verify->add_option("codefile2", f2)->required()->check(CLI::ExistingFile);
  verify->add_option("--word", extra, "Word file")->required()->check(CLI::ExistingFile);
  verify->add_option("--target", extra2, "Matrix file; defaults to the target stored in the word")
      ->check(CLI::ExistingFile);
  auto* families = app.add_subcommand("families", "Block structure for Reed-Muller and cyclic pairs");
  families->require_subcommand(1);
  auto* rm = families->add_subcommand("rm", "RM(r,m) inside RM(r+s,m)");
  rm->add_option("--r", rr)->required();
  rm->add_option("--s", s)->required();
  rm->add_option("--m", m)->required();
  auto* cyc = families->add_subcommand("cyclic", "Nested cyclic codes with generators g1 | g2");
  cyc->add_option("--n", n)->required();
  cyc->add_option("--g1", g1, "Outer generator polynomial, e.g. x^5+x^2+1")->required();
  cyc->add_option("--g2", g2, "Inner generator polynomial; defaults to the dual of the outer code");
  auto* selfcheck = app.add_subcommand("selfcheck", "Recompute the published example values");
  selfcheck->add_option("--data-dir", data_dir, "Directory with the shipped code files")->check(CLI::ExistingDirectory);
  selfcheck->add_option("--only", only, "Criterion numbers to run");
  selfcheck->add_option("--targets", targets, "Random synthesis targets per k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::string command, line;
  for (int i = 1; i < argc; ++i) line += (i > 1 ? " " : "") + std::string(argv[i]);
  for (const auto* sub : app.get_subcommands()) {
    command = sub->get_name();
    for (const auto* nested : sub->get_subcommands()) command += " " + nested->get_name();
  }
  Report report(command, line, g);
  int code = 0;
  try {
    if (*info) code = cmd_info(report, f1);
    if (*aut) code = cmd_aut(report, f1, brute, budget);
    if (*logical) code = cmd_logical(report, f1, f2, extra);
    if (*analyze) code = cmd_analyze(report, f1, f2);
    if (*stab) code = cmd_stab(report, f1);
    if (*synth) code = cmd_synth(report, f1, f2, extra, extra2);
    if (*verify) code = cmd_verify(report, f1, f2, extra, extra2);
    if (*rm) code = cmd_families_rm(report, rr, s, m);
    if (*cyc) code = cmd_families_cyclic(report, n, g1, g2);
    if (*selfcheck) code = cmd_selfcheck(report, g, data_dir, only, targets);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  report.emit(std::cout);
  return code;
}
