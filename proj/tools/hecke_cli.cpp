// Command-line driver: e, kato-check, mult-matrix, duality-table, and
// manifest sweeps over these.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hecke/kzero.hpp"

using namespace hecke;
using json = nlohmann::json;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, fallback = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FieldSpec {
  std::optional<std::uint32_t> p;
  bool rationals = false;
  std::string u;
};

struct Job {
  std::string command;
  FieldSpec field;
  int n = 0;
  std::string flavor = "affine";
  std::string support;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  std::string corpus = "characters";
  std::vector<std::string> compare;
  std::string module_path;  // kato-check on one module read from JSON
  json module;
};

struct Outcome {
  int code = ok;
  json report;
  std::string csv;  // used when the job asks for csv and the command has a table
};

Flavor parse_flavor(const std::string& s) {
  if (s == "affine") return Flavor::affine;
  if (s == "finite") return Flavor::finite;
  throw UsageError("flavor must be finite or affine, got '" + s + "'");
}

// "char=7,u=2" or "rationals,u=3"
FieldSpec parse_field_spec(const std::string& text) {
  FieldSpec spec;
  bool have_u = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? text.size() + 1 : comma + 1;
    if (tok == "rationals") {
      spec.rationals = true;
    } else if (tok.rfind("char=", 0) == 0) {
      spec.p = static_cast<std::uint32_t>(detail::parse_int64(tok.substr(5)));
    } else if (tok.rfind("u=", 0) == 0) {
      spec.u = tok.substr(2);
      have_u = true;
    } else {
      throw UsageError("bad field spec '" + text + "'");
    }
  }
  if (spec.rationals == spec.p.has_value() || !have_u)
    throw UsageError("field spec needs char=L or rationals, and u=EXPR: '" + text + "'");
  return spec;
}

// "dual" uses the sign (-1)^{n - r(gamma)}, "group_dual" the sign (-1)^{r(gamma)}
template <ExactField F>
json module_entry(const std::string& name, const Module<F>& m, K0Context<F>& ctx) {
  auto dual = ctx.kato_dual(m), group = ctx.kato_dual(m, DualSign::group);
  auto twist = ctx.twist_class(m);
  const bool pass = dual == twist && group == twist.scaled(m.n() % 2 ? -1 : 1);
  return {{"module", name}, {"dim", m.dim()}, {"dual", dual.to_json()},
          {"group_dual", group.to_json()}, {"twist", twist.to_json()}, {"pass", pass}};
}

template <ExactField F>
Support block_support(const Job& job, const K0Context<F>& ctx) {
  if (job.support.empty()) return consecutive_support(job.n, ctx.e());
  auto s = parse_support(job.support, ctx.e());
  int total = 0;
  for (const auto& [r, c] : s) total += c;
  if (total != job.n)
    throw UsageError("support has " + std::to_string(total) + " residues, expected n = " +
                     std::to_string(job.n));
  return s;
}

template <ExactField F>
Outcome kato_check(const Job& job, K0Context<F>& ctx) {
  const int n = job.n;
  const std::set<std::string> corpora{"characters", "standard", "all-simples-in-block", "all"};
  if (!corpora.count(job.corpus)) throw UsageError("unknown corpus '" + job.corpus + "'");
  const bool affine = ctx.flavor() == Flavor::affine;
  if (!affine && job.corpus != "characters")
    throw UsageError("the finite flavor has no standard modules; use --corpus characters");
  std::vector<std::pair<std::string, Module<F>>> corpus;
  if (!job.module.is_null()) {
    // entries written over F_p read unchanged over F_{p^k}
    json j = job.module;
    j["descriptor"]["field"] = ctx.field().name();
    std::optional<Module<F>> read;
    try {
      read.emplace(module_from_json(ctx.field(), j));
    } catch (const ModuleError& e) {
      throw UsageError(std::string("bad module file: ") + e.what());
    }
    auto m = std::move(*read);
    ctx.check_module(m);
    if (!m.is_full()) throw UsageError("--module must be over the full algebra");
    corpus.emplace_back(job.module_path, std::move(m));
  }
  const bool all = job.corpus == "all";
  if (!corpus.empty()) {
  } else if (all || job.corpus == "characters") {
    int shifts = !affine ? 1 : ctx.e() > 0 ? ctx.e() : n + 1;
    for (int a = 0; a < shifts; ++a) {
      corpus.emplace_back("Z(" + std::to_string(n) + "," + std::to_string(a) + ")",
                          make_character(ctx.algebra(n), CharKind::Z, a));
      corpus.emplace_back("L(" + std::to_string(n) + "," + std::to_string(a) + ")",
                          make_character(ctx.algebra(n), CharKind::L, a));
    }
  }
  if (corpus.empty() && (all || job.corpus == "standard" || job.corpus == "all-simples-in-block")) {
    const auto support = block_support(job, ctx);
    std::set<int> simple_ids;
    for (const auto& mu : enumerate_multisegments(n, ctx.e(), support, false)) {
      auto m = ctx.standard_module(mu);
      if (all || job.corpus == "standard") corpus.emplace_back("M" + mu.to_string(), m);
      for (const auto& [id, c] : ctx.semisimplify(m).coeffs) simple_ids.insert(id);
    }
    if (all || job.corpus == "all-simples-in-block")
      for (int id : simple_ids)
        corpus.emplace_back("simple#" + std::to_string(id), ctx.simples().representative(id));
  }
  Outcome out;
  json modules = json::array();
  for (const auto& [name, m] : corpus) {
    auto entry = module_entry(name, m, ctx);
    modules.push_back(entry);
    if (!entry["pass"].template get<bool>()) {
      out.code = failed;
      out.report["counterexample"] = entry;
      out.report["counterexample"]["representation"] = to_json(m);
      break;
    }
  }
  out.report["corpus"] = job.corpus;
  out.report["modules"] = modules;
  out.report["pass"] = out.code == ok;
  return out;
}

template <ExactField F>
void require_affine(const K0Context<F>& ctx, const std::string& command) {
  if (ctx.flavor() != Flavor::affine)
    throw UsageError(command + " needs the affine flavor (segments label X-eigenvalues)");
}

template <ExactField F>
Outcome mult_matrix(const Job& job, K0Context<F>& ctx) {
  require_affine(ctx, "mult-matrix");
  auto block = analyze_block(ctx, job.n, block_support(job, ctx));
  auto m = multiplicity_matrix(block, ctx.e());
  auto bad = m.violations(block.aperiodic);
  Outcome out;
  out.report = m.to_json();
  out.report["violations"] = bad;
  out.report["pass"] = bad.empty();
  out.csv = m.to_csv();
  out.code = bad.empty() ? ok : failed;
  return out;
}

template <ExactField F>
Outcome duality(const Job& job, K0Context<F>& ctx) {
  require_affine(ctx, "duality-table");
  auto block = analyze_block(ctx, job.n, block_support(job, ctx));
  auto rows = duality_table(ctx, block);
  Outcome out;
  std::map<int, int> dual;
  json table = json::array();
  out.csv = "\"id\",\"label\",\"dual_id\",\"dual_label\"\n";
  for (const auto& r : rows) {
    table.push_back({{"id", r.id}, {"label", r.label},
                     {"dual_id", r.dual_id ? json(*r.dual_id) : json(nullptr)},
                     {"dual_label", r.dual_label}, {"dual_class", r.dual_class},
                     {"matches_twist", r.matches_twist}});
    out.csv += std::to_string(r.id) + ",\"" + r.label + "\"," +
               (r.dual_id ? std::to_string(*r.dual_id) : "") + ",\"" + r.dual_label + "\"\n";
    if (!r.dual_id || !r.matches_twist || !block.id_label.count(*r.dual_id)) {
      if (out.code == ok) {
        out.report["counterexample"] = table.back();
        out.report["counterexample"]["representation"] = to_json(ctx.simples().representative(r.id));
      }
      out.code = failed;
    } else {
      dual[r.id] = *r.dual_id;
    }
  }
  bool involution = out.code == ok;
  for (const auto& [id, d] : dual)
    if (!dual.count(d) || dual.at(d) != id) involution = false;
  if (!involution) out.code = failed;
  out.report["table"] = table;
  out.report["involution"] = involution;
  out.report["pass"] = out.code == ok;
  return out;
}

template <ExactField F>
Outcome run_typed(const Job& job, const std::string& u_text, const F& field) {
  if (job.n < 1) throw UsageError("--n must be at least 1");
  auto u = parse_scalar(field, u_text);
  K0Context<F> ctx(field, u, parse_flavor(job.flavor), job.seed);
  Outcome out;
  if (job.command == "kato-check") out = kato_check(job, ctx);
  else if (job.command == "mult-matrix") out = mult_matrix(job, ctx);
  else if (job.command == "duality-table") out = duality(job, ctx);
  else throw UsageError("unknown command '" + job.command + "'");
  out.report["field"] = field.name();
  out.report["u"] = field.format(u);
  out.report["n"] = job.n;
  out.report["e"] = ctx.e();
  return out;
}

// Runs over the prime field, retrying over F_{p^2} and F_{p^3} when a simple
// turns out not to be absolutely irreducible.
Outcome run_on_field(const Job& job, const FieldSpec& spec) {
  if (spec.rationals) return run_typed(job, spec.u, RationalField());
  if (!spec.p) throw UsageError("one of --char or --rationals is required");
  try {
    return run_typed(job, spec.u, PrimeField(*spec.p));
  } catch (const NonSplitError& err) {
    std::string reason = err.what();
    for (int k = 2; k <= 3; ++k) {
      try {
        auto out = run_typed(job, spec.u, ExtField(*spec.p, k));
        out.report["fallback"] = {{"field", ExtField(*spec.p, k).name()}, {"reason", reason}};
        if (out.code == ok) out.code = fallback;
        return out;
      } catch (const NonSplitError& again) {
        reason = again.what();
      }
    }
    throw;
  }
}

Outcome run_compare(const Job& job) {
  if (job.compare.size() < 2) throw UsageError("--compare needs at least two field specs");
  Outcome out;
  json results = json::array();
  std::optional<json> first;
  bool match = true;
  for (const auto& text : job.compare) {
    auto r = run_on_field(job, parse_field_spec(text));
    if (r.code == failed) out.code = failed;
    if (r.code == fallback && out.code == ok) out.code = fallback;
    json key = {{"labels", r.report["labels"]}, {"entries", r.report["entries"]}};
    if (!first) first = key;
    else if (key != *first) match = false;
    results.push_back({{"spec", text}, {"e", r.report["e"]}, {"matrix", r.report}});
  }
  out.report = {{"compare", results}, {"result", match ? "MATCH" : "MISMATCH"}};
  out.csv = match ? "MATCH\n" : "MISMATCH\n";
  if (!match) out.code = failed;
  return out;
}

Job with_module(Job job) {
  if (job.module_path.empty()) return job;
  if (job.command != "kato-check") throw UsageError("--module applies to kato-check");
  std::ifstream in(job.module_path);
  if (!in) throw UsageError("cannot read " + job.module_path);
  try {
    job.module = json::parse(in);
    const auto& d = job.module.at("descriptor");
    const auto field = d.at("field").get<std::string>();
    if (field == "Q") {
      if (job.field.p) throw UsageError("module is over Q");
      job.field.rationals = true;
    } else {
      if (field.size() < 2 || field[0] != 'F') throw UsageError("module field must be F<p> or Q");
      auto p = static_cast<std::uint32_t>(detail::parse_int64(field.substr(1)));
      if (job.field.rationals || (job.field.p && *job.field.p != p))
        throw UsageError("module is over " + field);
      job.field.p = p;
    }
    if (job.field.u.empty()) job.field.u = d.at("u").get<std::string>();
    const int n = d.at("n").get<int>();
    if (job.n != 0 && job.n != n) throw UsageError("module has degree " + std::to_string(n));
    job.n = n;
    job.flavor = d.at("flavor").get<std::string>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad module file: ") + e.what());
  }
  return job;
}

Outcome run_job(Job job) {
  job = with_module(std::move(job));
  if (job.field.u.empty() && job.compare.empty()) throw UsageError("--u is required");
  if (job.format != "json" && job.format != "csv")
    throw UsageError("--format must be json or csv");
  if (job.command == "e") {
    Outcome out;
    std::uint64_t e = 0;
    if (job.field.rationals) {
      RationalField q;
      e = e_invariant(q, parse_scalar(q, job.field.u));
    } else if (job.field.p) {
      PrimeField f(*job.field.p);
      e = e_invariant(f, parse_scalar(f, job.field.u));
    } else {
      throw UsageError("one of --char or --rationals is required");
    }
    out.report = e;
    out.csv = std::to_string(e) + "\n";
    return out;
  }
  if (!job.compare.empty()) {
    if (job.command != "mult-matrix") throw UsageError("--compare applies to mult-matrix");
    return run_compare(job);
  }
  return run_on_field(job, job.field);
}

// Usage problems map to exit 2; anything mathematical propagates as 1.
Outcome run_guarded(const Job& job) {
  try {
    return run_job(job);
  } catch (const UsageError& e) {
    return {usage, {{"error", e.what()}}, ""};
  } catch (const ParseError& e) {
    return {usage, {{"error", e.what()}}, ""};
  } catch (const DomainError& e) {
    return {usage, {{"error", e.what()}}, ""};
  } catch (const std::invalid_argument& e) {
    return {usage, {{"error", e.what()}}, ""};
  } catch (const std::exception& e) {
    return {failed, {{"error", e.what()}}, ""};
  }
}

void emit(const Outcome& out, const std::string& format, const std::string& path) {
  std::string text;
  if (format == "csv" && !out.csv.empty()) text = out.csv;
  else text = out.report.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
  }
}

Job job_from_json(const json& j) {
  Job job;
  job.command = j.at("command").get<std::string>();
  if (j.contains("char")) job.field.p = j.at("char").get<std::uint32_t>();
  job.field.rationals = j.value("rationals", false);
  if (j.contains("u")) {
    const auto& u = j.at("u");
    job.field.u = u.is_string() ? u.get<std::string>() : u.dump();
  }
  job.flavor = j.value("flavor", std::string("affine"));
  job.support = j.value("support", std::string());
  job.seed = j.value("seed", std::uint64_t{0});
  job.corpus = j.value("corpus", std::string("characters"));
  job.compare = j.value("compare", std::vector<std::string>{});
  job.module_path = j.value("module", std::string());
  job.n = j.value("n", job.module_path.empty() ? 1 : 0);
  job.format = j.value("format", std::string("json"));
  return job;
}

int run_manifest(const std::string& path, const std::string& out_path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read manifest " << path << "\n";
    return usage;
  }
  json jobs;
  try {
    jobs = json::parse(in);
  } catch (const json::exception& e) {
    std::cerr << "manifest: " << e.what() << "\n";
    return usage;
  }
  if (!jobs.is_array()) {
    std::cerr << "manifest must be a JSON list of jobs\n";
    return usage;
  }
  json results = json::array();
  int worst = ok;
  for (const auto& j : jobs) {
    Outcome out;
    try {
      out = run_guarded(job_from_json(j));
    } catch (const json::exception& e) {
      out = {usage, {{"error", std::string("bad job: ") + e.what()}}, ""};
    }
    results.push_back({{"job", j}, {"exit", out.code}, {"result", out.report}});
    // usage beats failure beats fallback
    auto rank = [](int c) { return c == usage ? 3 : c == failed ? 2 : c == fallback ? 1 : 0; };
    if (rank(out.code) > rank(worst)) worst = out.code;
  }
  emit({worst, results, ""}, "json", out_path);
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in affine Hecke algebras of type A"};
  app.require_subcommand(0, 1);
  Job job;
  std::string manifest, global_out;
  app.add_option("--manifest", manifest, "JSON list of jobs to run");
  app.add_option("--out", global_out, "output path for --manifest");

  auto add_common = [&](CLI::App* sub, bool with_n) {
    auto* c = sub->add_option("--char", job.field.p, "characteristic of the prime field");
    auto* q = sub->add_flag("--rationals", job.field.rationals, "work over Q");
    c->excludes(q);
    sub->add_option("--u", job.field.u, "parameter u");
    sub->add_option("--seed", job.seed, "random seed")->capture_default_str();
    sub->add_option("--out", job.out, "output file (default stdout)");
    sub->add_option("--format", job.format, "json or csv")->capture_default_str();
    if (!with_n) return;
    sub->add_option("--n", job.n, "degree");
    sub->add_option("--flavor", job.flavor, "finite or affine")->capture_default_str();
    sub->add_option("--support", job.support, "residues of the block, e.g. 0,1,2");
  };
  auto* e_cmd = app.add_subcommand("e", "print the e-invariant of u");
  add_common(e_cmd, false);
  auto* kato = app.add_subcommand("kato-check", "check the alternating sum against the tau twist");
  add_common(kato, true);
  kato->add_option("--corpus", job.corpus, "characters, standard, all-simples-in-block or all")
      ->capture_default_str();
  kato->add_option("--module", job.module_path, "check one module given as JSON instead");
  auto* mm = app.add_subcommand("mult-matrix", "multiplicities of simples in standard modules");
  add_common(mm, true);
  mm->add_option("--compare", job.compare, "field specs char=L,u=EXPR to compare");
  auto* dt = app.add_subcommand("duality-table", "dual of each simple of a block");
  add_common(dt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }
  if (!manifest.empty()) {
    if (!app.get_subcommands().empty()) {
      std::cerr << "--manifest runs on its own\n";
      return usage;
    }
    return run_manifest(manifest, global_out);
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return usage;
  }
  job.command = app.get_subcommands()[0]->get_name();
  Outcome out = run_guarded(job);
  if (out.code == usage || out.report.contains("error")) {
    std::cerr << out.report.value("error", std::string()) << "\n";
    return out.code;
  }
  try {
    emit(out, job.format, job.out);
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return usage;
  }
  if (out.code == failed && out.report.contains("counterexample"))
    std::cerr << "counterexample: " << out.report["counterexample"].dump() << "\n";
  return out.code;
}
