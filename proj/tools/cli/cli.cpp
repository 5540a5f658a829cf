#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ncr/error.hpp"
#include "ncr/homext.hpp"
#include "ncr/oracle.hpp"
#include "ncr/reduction.hpp"

namespace ncr::cli {

namespace {

const char* mode_name(Mode m) { return m == Mode::oracle ? "oracle" : "randomized"; }

NcrkConfig config_of(const Flags& flags) {
  NcrkConfig cfg;
  cfg.seed = flags.seed;
  cfg.max_retries = flags.retries;
  cfg.mode = flags.mode;
  cfg.blowup_d = flags.blowup_d;
  return cfg;
}

json flags_json(const Flags& flags) {
  json j = {{"seed", flags.seed}, {"retries", flags.retries}, {"mode", mode_name(flags.mode)}};
  j["blowup_d"] = flags.blowup_d ? json(*flags.blowup_d) : json(nullptr);
  return j;
}

json trace_json(const NcrkTrace& t) {
  return {{"d", t.d},           {"base_d", t.base_d}, {"field_lift", t.field_lift},
          {"seeds", t.seeds},   {"attempts", t.attempts}, {"mode", mode_name(t.mode)}};
}

template <Field F>
json basis_json(const Subspace<F>& s) {
  return {{"ambient", s.ambient_dim()}, {"dim", s.dim()}, {"basis", matrix_to_json(s.basis())}};
}

template <Field F>
json certificate_json(const ShrunkCertificate<F>& c) {
  return {{"u", basis_json(c.u)}, {"image", basis_json(c.image)}, {"c", c.c}, {"minimal", c.minimal}};
}

template <Field F>
json subrep_json(const Quiver& q, const Subrepresentation<F>& sub) {
  json o = json::object();
  for (std::size_t x = 0; x < q.vertex_count(); ++x) o[q.vertices()[x]] = basis_json(sub.spaces[x]);
  return o;
}

json dims_json(const Quiver& q, const DimensionVector& d) {
  json o = json::object();
  for (std::size_t x = 0; x < q.vertex_count(); ++x) o[q.vertices()[x]] = d[x];
  return o;
}

const Weight& need_weight(const Instance& inst, const std::string& cmd) {
  if (!inst.weight) throw ValidationError(cmd + " needs a \"weight\" in the instance");
  return *inst.weight;
}

const DimensionVector& need_alpha(const Instance& inst, const std::string& cmd) {
  if (!inst.alpha) throw ValidationError(cmd + " needs an \"alpha\" in the instance");
  return *inst.alpha;
}

// The matrix space an instance stands for: the sigma-reduction when a weight
// is given, otherwise the span of the arrow maps of a generalized Kronecker
// quiver (every arrow with the same tail and head).
template <Field F>
MatrixSpace<F> instance_space(const Representation<F>& w, const std::optional<Weight>& weight) {
  if (weight) return build_sigma_space(w, *weight);
  const Quiver& q = w.quiver();
  if (q.arrow_count() == 0) throw ValidationError("ncrk needs a weight or at least one arrow");
  const auto tail = q.arrow(0).tail;
  const auto head = q.arrow(0).head;
  for (const auto& a : q.arrows()) {
    if (a.tail != tail || a.head != head || tail == head) {
      throw ValidationError("without a weight, ncrk needs all arrows parallel between two distinct vertices");
    }
  }
  return MatrixSpace<F>(w.field(), w.dims()[head], w.dims()[tail], w.maps());
}

template <Field F>
void cmd_ncrk(const Instance& inst, const Representation<F>& w, const Flags& flags, json& report) {
  const auto space = instance_space(w, inst.weight);
  const auto res = ncrk(space, config_of(flags));
  report["result"] = {{"ncrk", res.rank},
                      {"rows", space.rows()},
                      {"cols", space.cols()},
                      {"max_shrink", res.certificate.c},
                      {"source", inst.weight ? "sigma-reduction" : "arrow-span"}};
  json cert = certificate_json(res.certificate);
  if (res.witness) {
    cert["blowup_element_rank"] = rank(*res.witness);
    cert["blowup_d"] = res.trace.d;
  }
  report["certificate"] = std::move(cert);
  report["trace"] = trace_json(res.trace);
}

template <Field F>
json witness_trace_json(const WitnessTrace& t) {
  json j = trace_json(t.ncrk);
  j["algorithm"] = t.algorithm;
  j["closure_sweeps"] = t.closure_sweeps;
  j["saturation_passes"] = t.saturation_passes;
  j["augmented_arrows"] = t.augmented_arrows;
  return j;
}

template <Field F>
void cmd_witness(const Instance& inst, const Representation<F>& w, const Flags& flags, json& report) {
  const auto& sigma = need_weight(inst, "witness");
  const auto cfg = config_of(flags);
  if (flags.algo != "reduced" && flags.algo != "augmented" && flags.algo != "both") {
    throw ValidationError("--algo must be reduced, augmented or both");
  }
  std::optional<WitnessReport<F>> reduced, augmented;
  if (flags.algo != "augmented") reduced = optimal_witness(w, sigma, cfg);
  if (flags.algo != "reduced") augmented = augmented_witness(w, sigma, cfg);
  if (reduced && augmented &&
      (reduced->discrepancy != augmented->discrepancy || !(reduced->witness == augmented->witness))) {
    throw InvariantViolation("reduced and augmented pipelines disagree");
  }
  const auto& main = reduced ? *reduced : *augmented;
  const Quiver& q = w.quiver();
  report["result"] = {{"discrepancy", main.discrepancy},
                      {"semistable", main.semistable},
                      {"minimal", main.minimal},
                      {"sigma_of_dims", sigma_value(sigma, w.dims())},
                      {"witness_dims", dims_json(q, main.witness.dims())}};
  if (reduced && augmented) report["result"]["pipelines_agree"] = true;
  report["certificate"] = {{"witness", subrep_json(q, main.witness)}, {"shrunk", certificate_json(main.certificate)}};
  json trace = json::object();
  if (reduced) trace["reduced"] = witness_trace_json<F>(reduced->trace);
  if (augmented) trace["augmented"] = witness_trace_json<F>(augmented->trace);
  report["trace"] = std::move(trace);
}

template <Field F>
int cmd_semistable(const Instance& inst, const Representation<F>& w, const Flags& flags, json& report) {
  const auto& sigma = need_weight(inst, "semistable");
  const auto r = optimal_witness(w, sigma, config_of(flags));
  const Quiver& q = w.quiver();
  report["result"] = {{"semistable", r.semistable},
                      {"sigma_of_dims", sigma_value(sigma, w.dims())},
                      {"discrepancy", r.discrepancy}};
  report["certificate"] = {{"witness", subrep_json(q, r.witness)}, {"shrunk", certificate_json(r.certificate)}};
  report["trace"] = witness_trace_json<F>(r.trace);
  return r.semistable ? kOk : kNotSemistable;
}

template <Field F>
void cmd_homext(const Instance& inst, const Representation<F>& w, const Flags& flags, const std::string& cmd,
                json& report) {
  const auto& dv = need_alpha(inst, cmd);
  const Quiver& q = w.quiver();
  const auto cfg = config_of(flags);
  HomExtResult<F> r = [&] {
    if (flags.orientation == "target-fixed") return nchom_ncext(dv, w, cfg);
    if (flags.orientation == "source-fixed") return ncext_fixed_source_full(w, dv, cfg);
    throw ValidationError("--orientation must be target-fixed or source-fixed");
  }();
  report["result"] = {{"orientation", flags.orientation}, {"nchom", r.nchom}, {"ncext", r.ncext}, {"euler", r.euler}};
  json cert = {{"subrepresentation", subrep_json(q, r.sub)}, {"sub_dims", dims_json(q, r.sub.dims())}};
  if (flags.orientation == "target-fixed") cert["factor_dims"] = dims_json(q, r.factor_dims);
  cert["shrunk"] = certificate_json(r.certificate);
  report["certificate"] = std::move(cert);
  report["trace"] = trace_json(r.trace);
}

void cmd_oracle(const Instance& inst, const Representation<PrimeField>& w, json& report) {
  json result = json::object();
  json cert = json::object();
  const Quiver& q = w.quiver();
  bool any = false;
  const bool kronecker_like = [&] {
    if (q.arrow_count() == 0) return false;
    for (const auto& a : q.arrows()) {
      if (a.tail != q.arrow(0).tail || a.head != q.arrow(0).head || a.tail == a.head) return false;
    }
    return true;
  }();
  if (inst.weight || kronecker_like) {
    const auto b = oracle::brute_ncrk(instance_space(w, inst.weight));
    result["ncrk"] = b.rank;
    result["max_shrink"] = b.max_c;
    cert["minimal_u"] = basis_json(b.minimal_u);
    any = true;
  }
  if (inst.weight) {
    const auto b = oracle::brute_discrepancy(w, *inst.weight);
    Subrepresentation<PrimeField> minimal = b.optima.front();
    for (const auto& s : b.optima) minimal = subrep_meet(minimal, s);
    result["discrepancy"] = b.c;
    result["optimal_witnesses"] = b.optima.size();
    result["subrepresentations"] = b.subrep_count;
    result["semistable"] = sigma_value(*inst.weight, w.dims()) == 0 && b.c == 0;
    cert["witness"] = subrep_json(q, minimal);
    any = true;
  }
  if (inst.alpha) {
    result["ncext_target"] = oracle::brute_ncext_target(*inst.alpha, w);
    result["ncext_source"] = oracle::brute_ncext_source(w, *inst.alpha);
    any = true;
  }
  if (!any) throw ValidationError("oracle needs a weight, an alpha, or a generalized Kronecker quiver");
  report["result"] = std::move(result);
  report["certificate"] = std::move(cert);
  report["trace"] = {{"mode", "oracle"}, {"work_ceiling", oracle::kWorkCeiling}};
}

template <Field F>
Subspace<F> subspace_from_json(const F& field, const json& j, std::size_t ambient) {
  if (!j.is_object() || !j.contains("basis") || !j.at("basis").is_array()) {
    throw ValidationError("report: subspace entry needs a basis");
  }
  const auto& b = j.at("basis");
  return Subspace<F>::row_span(matrix_from_json(field, b, b.size(), ambient, nullptr, "basis"));
}

template <Field F, typename Check>
void add_certificate_checks(const json& report, const Representation<F>& w, const Instance& inst, Check& check) {
  const json& cert = report.at("certificate");
  const Quiver& q = w.quiver();
  auto read_subrep = [&](const json& j) {
    Subrepresentation<F> sub;
    for (std::size_t x = 0; x < q.vertex_count(); ++x) {
      sub.spaces.push_back(subspace_from_json(w.field(), j.at(q.vertices()[x]), w.dims()[x]));
    }
    return sub;
  };
  const json result = report.value("result", json::object());
  if (cert.contains("witness") && inst.weight && result.contains("discrepancy")) {
    const auto sub = read_subrep(cert.at("witness"));
    check("witness_is_subrepresentation", is_subrep(w, sub.spaces));
    check("witness_sigma_value", sigma_value(*inst.weight, sub.dims()) == result.at("discrepancy").get<std::int64_t>());
  }
  if (cert.contains("subrepresentation")) {
    const auto sub = read_subrep(cert.at("subrepresentation"));
    check("subrepresentation_is_closed", is_subrep(w, sub.spaces));
    if (inst.alpha && result.contains("ncext")) {
      const auto ext = result.at("ncext").get<std::int64_t>();
      if (result.value("orientation", std::string()) == "source-fixed") {
        check("ncext_attained", -euler_form(q, sub.dims(), *inst.alpha) == ext);
      } else {
        check("ncext_attained", -euler_form(q, *inst.alpha, factor_dims(w, sub)) == ext);
      }
    }
  }
  const json* shrunk = cert.contains("shrunk") ? &cert.at("shrunk") : (cert.contains("u") ? &cert : nullptr);
  if (shrunk && report.value("command", std::string()) != "nchom" && report.value("command", std::string()) != "ncext") {
    const auto space = instance_space(w, inst.weight);
    ShrunkCertificate<F> c{subspace_from_json(w.field(), shrunk->at("u"), space.cols()),
                           subspace_from_json(w.field(), shrunk->at("image"), space.rows()),
                           shrunk->at("c").get<std::int64_t>(), true};
    check("shrunk_certificate", certificate_holds(space, c));
  }
}

template <Field F>
json verify_checks(const json& report, const Instance& inst, const Representation<F>& w) {
  json checks = json::array();
  auto check = [&](const std::string& name, bool ok) { checks.push_back({{"check", name}, {"ok", ok}}); };
  const bool same = report.value("instance_digest", std::string()) == instance_digest(inst);
  check("instance_digest", same);
  // Certificates for another instance cannot be read against this one.
  if (!same || !report.contains("certificate")) return checks;
  try {
    add_certificate_checks(report, w, inst, check);
  } catch (const ValidationError&) {
    check("certificate_well_formed", false);
  } catch (const json::exception&) {
    check("certificate_well_formed", false);
  }
  return checks;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ProbabilisticFailure*>(&e)) return kProbabilistic;
  if (dynamic_cast<const OracleInfeasible*>(&e)) return kOracleInfeasible;
  if (dynamic_cast<const InvariantViolation*>(&e)) return kInternal;
  if (dynamic_cast<const Error*>(&e)) return kValidation;
  if (dynamic_cast<const json::exception*>(&e)) return kValidation;
  return kInternal;
}

}  // namespace

Outcome error_outcome(const std::exception& e) {
  Outcome o;
  o.exit_code = exit_code_for(e);
  const auto* err = dynamic_cast<const Error*>(&e);
  o.report = {{"error", err ? err->kind() : (dynamic_cast<const json::exception*>(&e) ? "parse" : "internal")},
              {"message", e.what()},
              {"exit_code", o.exit_code}};
  if (const auto* p = dynamic_cast<const ProbabilisticFailure*>(&e)) o.report["rank_lower_bound"] = p->rank_lower_bound();
  return o;
}

Outcome run_command(const std::string& command, const Instance& inst, const Flags& flags) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  json& report = out.report;
  report["command"] = command;
  report["version"] = kVersion;
  report["instance_digest"] = instance_digest(inst);
  report["flags"] = flags_json(flags);
  std::visit(
      [&](const auto& w) {
        using R = std::decay_t<decltype(w)>;
        if (command == "ncrk") {
          cmd_ncrk(inst, w, flags, report);
        } else if (command == "witness") {
          cmd_witness(inst, w, flags, report);
        } else if (command == "semistable") {
          out.exit_code = cmd_semistable(inst, w, flags, report);
        } else if (command == "nchom" || command == "ncext") {
          cmd_homext(inst, w, flags, command, report);
        } else if (command == "oracle") {
          if constexpr (std::is_same_v<R, Representation<PrimeField>>) {
            cmd_oracle(inst, w, report);
          } else {
            throw OracleInfeasible("the oracle only enumerates over prime fields");
          }
        } else {
          throw ValidationError("unknown command \"" + command + "\"");
        }
      },
      inst.rep);
  if (flags.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["trace"]["elapsed_ms"] = ms;
  }
  return out;
}

Outcome verify_report(const json& report, const Instance& inst) {
  Outcome out;
  json checks = std::visit([&](const auto& w) { return verify_checks(report, inst, w); }, inst.rep);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.at("ok").get<bool>();
  out.report = {{"command", "verify"},
                {"version", kVersion},
                {"instance_digest", instance_digest(inst)},
                {"verified_command", report.value("command", std::string())},
                {"valid", ok},
                {"checks", checks}};
  out.exit_code = ok ? kOk : kValidation;
  return out;
}

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open \"" + path + "\"");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("\"" + path + "\" is not valid JSON: " + e.what());
  }
}

Instance load_instance(const std::string& path, std::ostream& err) {
  std::vector<std::string> warnings;
  Instance inst = parse_instance(read_json_file(path), &warnings);
  if (inst.field.kind == FieldSpec::Kind::prime) {
    const auto n = std::visit([](const auto& w) { return w.dims().total(); }, inst.rep);
    if (inst.field.p <= 2 * n) {
      warnings.push_back("field F_" + std::to_string(inst.field.p) + " is small for total dimension " +
                         std::to_string(n) + "; random sampling runs over a lifted blow-up");
    }
  }
  for (const auto& w : warnings) err << json{{"warning", w}}.dump() << "\n";
  return inst;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-commutative rank, semistability witnesses and nc hom/ext for quiver representations", "ncr-cli"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Flags flags;
  std::string instance_path;
  std::string report_path;
  std::string mode = "randomized";
  std::size_t blowup_d = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("instance", instance_path, "instance JSON file")->required();
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_option("--retries", flags.retries, "attempts before giving up");
    sub->add_option("--mode", mode, "randomized or oracle")->check(CLI::IsMember({"randomized", "oracle"}));
    sub->add_option("--blowup-d", blowup_d, "override the blow-up factor")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", flags.timing, "add wall-clock time to the trace");
  };
  for (const char* name : {"ncrk", "semistable", "oracle"}) add_common(app.add_subcommand(name, std::string(name)));
  auto* witness = app.add_subcommand("witness", "optimal sigma-witness");
  add_common(witness);
  witness->add_option("--algo", flags.algo, "reduced, augmented or both")
      ->check(CLI::IsMember({"reduced", "augmented", "both"}));
  for (const char* name : {"nchom", "ncext"}) {
    auto* sub = app.add_subcommand(name, std::string(name));
    add_common(sub);
    sub->add_option("--orientation", flags.orientation, "target-fixed or source-fixed")
        ->check(CLI::IsMember({"target-fixed", "source-fixed"}));
  }
  auto* verify = app.add_subcommand("verify", "re-validate the certificates in a report");
  verify->add_option("report", report_path, "report JSON file")->required();
  verify->add_option("instance", instance_path, "instance JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << json{{"error", "usage"}, {"message", e.what()}, {"exit_code", kValidation}}.dump() << "\n";
    return kValidation;
  }
  if (mode == "oracle") flags.mode = Mode::oracle;
  if (blowup_d > 0) flags.blowup_d = blowup_d;

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    const Instance inst = load_instance(instance_path, err);
    Outcome o = command == "verify" ? verify_report(read_json_file(report_path), inst) : run_command(command, inst, flags);
    out << o.report.dump(2) << "\n";
    return o.exit_code;
  } catch (const std::exception& e) {
    const Outcome o = error_outcome(e);
    err << o.report.dump() << "\n";
    return o.exit_code;
  }
}

}  // namespace ncr::cli
