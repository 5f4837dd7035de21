// cwpos: verification batteries for positivity of Chern and Schur forms.
//
// Exit codes: 0 when no positive control was refuted and every identity held,
// 1 otherwise, 2 for usage, input or I/O errors.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cwpos/batteries.hpp"
#include "cwpos/curvature_io.hpp"
#include "cwpos/errors.hpp"

namespace {

struct Options {
  cwpos::RunConfig cfg;
  std::string output;
  std::string csv;
  bool quiet = false;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--starts", o.cfg.budget.random_starts, "random starts per search")->capture_default_str();
  sub->add_option("--iters", o.cfg.budget.local_iters, "local sweeps per start")->capture_default_str();
  sub->add_option("--tol", o.cfg.budget.tol, "refutation tolerance")->capture_default_str();
  sub->add_option("--seed", o.cfg.seed, "master seed for samples and searches")->capture_default_str();
  sub->add_option("--output,-o", o.output, "write the JSON report here (default: stdout)");
  sub->add_option("--csv", o.csv, "also write a CSV summary");
  sub->add_option("--threads", o.cfg.threads, "worker threads (default: CWPOS_THREADS or all cores)");
  sub->add_flag("--quiet,-q", o.quiet, "suppress the summary on stderr");
}

void add_battery(CLI::App* sub, Options& o) {
  add_common(sub, o);
  sub->add_option("--samples", o.cfg.samples, "number of samples (verify-c2: per rank/dimension pair)");
  sub->add_option("--dim", o.cfg.dims, "ambient dimensions, cycled over samples")->delimiter(',');
  sub->add_option("--rank", o.cfg.ranks, "bundle ranks")->delimiter(',');
  sub->add_option("--route-tol", o.cfg.route_tol, "relative tolerance between two routes to one form")
      ->capture_default_str();
  sub->add_flag("--negative", o.cfg.negative, "sample indefinite controls instead of positive ones");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw cwpos::Error("cannot write " + path);
  out << text;
}

void summarize(const cwpos::Report& rep) {
  using S = cwpos::PositivityVerdict::Status;
  std::fprintf(stderr, "%s: %zu samples, %zu certified, %zu refuted, %zu unknown, %zu unexpected refutations, %zu failures\n",
               cwpos::to_string(rep.command).c_str(), rep.records.size(), rep.count(S::Certified),
               rep.count(S::Refuted), rep.count(S::Unknown), rep.unexpected_refutations(), rep.failures());
  for (const auto& s : rep.symbolic) {
    std::fprintf(stderr, "  %-26s %s (%zu cases)%s%s\n", s.name.c_str(), s.passed ? "ok" : "FAILED", s.cases,
                 s.passed ? "" : ": ", s.passed ? "" : s.detail.c_str());
  }
  std::size_t shown = 0;
  for (const auto& rec : rep.records) {
    for (const auto& f : rec.failures) {
      if (shown++ < 10) std::fprintf(stderr, "  sample %zu: %s\n", rec.index, f.c_str());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized and symbolic checks of positivity for Chern, Segre and Schur forms"};
  app.set_version_flag("--version", cwpos::kVersion);
  app.require_subcommand(1);
  Options o;

  auto* main_cmd = app.add_subcommand("verify-main", "S(2,1,0) = c1c2 - c3 on rank-3 Griffiths semipositive samples");
  add_battery(main_cmd, o);
  auto* c2_cmd = app.add_subcommand("verify-c2", "c2 on samples of every requested rank and dimension");
  add_battery(c2_cmd, o);
  auto* ineq_cmd = app.add_subcommand("verify-ineq", "c1^3 >= c1c2 >= c3 and s2 >= 0 in rank 3");
  add_battery(ineq_cmd, o);
  auto* push_cmd = app.add_subcommand("verify-pushforwards", "exact symbolic push-forward identities");
  add_common(push_cmd, o);

  auto* form_cmd = app.add_subcommand("check-form", "positivity tests of one form computed from a curvature file");
  add_common(form_cmd, o);
  form_cmd->add_option("--input,-i", o.cfg.input, "curvature JSON file")->required()->check(CLI::ExistingFile);
  form_cmd->add_option("--form", o.cfg.form, "c<k>, s<k>, S(a,b,..), s(a,b,..), c1^3-c1c2, c1c2-c3")
      ->capture_default_str();
  form_cmd->add_option("--verdict", o.cfg.verdicts, "weak, hermitian, strong (repeatable)")
      ->check(CLI::IsMember({"weak", "hermitian", "strong"}))
      ->delimiter(',');

  cwpos::GeneratorSpec gen;
  std::string gen_kind = "dual_nakano";
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("generate", "write a sampled curvature point as JSON");
  gen_cmd->add_option("--kind", gen_kind, "dual_nakano, line_sum, psd_tensor, convex_mix, indefinite")
      ->capture_default_str();
  gen_cmd->add_option("--dim,-n", gen.n, "ambient dimension")->capture_default_str();
  gen_cmd->add_option("--rank,-r", gen.r, "bundle rank")->capture_default_str();
  gen_cmd->add_option("-m", gen.m, "columns of the dual-Nakano factor")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  gen_cmd->add_option("--scale", gen.scale, "overall scale")->capture_default_str();
  gen_cmd->add_option("--output,-o", gen_out, "output file (default: stdout)");

  std::string replay_in;
  auto* replay_cmd = app.add_subcommand("replay", "re-evaluate every refutation witness of a JSON report");
  replay_cmd->add_option("report", replay_in, "report file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_cmd->parsed()) {
      gen.kind = cwpos::parse_generator_kind(gen_kind);
      const auto c = cwpos::sample(gen);
      if (gen_out.empty()) {
        std::cout << cwpos::curvature_to_json(c).dump(2) << "\n";
      } else {
        cwpos::write_curvature_file(gen_out, c);
      }
      return 0;
    }
    if (replay_cmd->parsed()) {
      std::ifstream in(replay_in);
      const auto doc = nlohmann::json::parse(in);
      int bad = 0;
      for (const auto& r : cwpos::replay_report(doc)) {
        const bool ok = r.value < -r.tol && r.form_deviation <= 1e-10;
        bad += !ok;
        std::printf("sample %zu %s (%s): %.6e %s\n", r.index, r.form.c_str(), r.test.c_str(), r.value,
                    ok ? "replays" : "DOES NOT REPLAY");
      }
      return bad == 0 ? 0 : 1;
    }

    if (main_cmd->parsed()) o.cfg.command = cwpos::RunConfig::Command::VerifyMain;
    if (c2_cmd->parsed()) o.cfg.command = cwpos::RunConfig::Command::VerifyC2;
    if (ineq_cmd->parsed()) o.cfg.command = cwpos::RunConfig::Command::VerifyIneq;
    if (push_cmd->parsed()) o.cfg.command = cwpos::RunConfig::Command::VerifyPushforwards;
    if (form_cmd->parsed()) o.cfg.command = cwpos::RunConfig::Command::CheckForm;
    o.cfg.budget.rng_seed = o.cfg.seed;

    const cwpos::Report rep = cwpos::run(o.cfg);
    const std::string text = rep.to_json().dump(2) + "\n";
    if (o.output.empty()) {
      std::cout << text;
    } else {
      write_text(o.output, text);
    }
    if (!o.csv.empty()) write_text(o.csv, rep.to_csv());
    if (!o.quiet) summarize(rep);
    return rep.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
