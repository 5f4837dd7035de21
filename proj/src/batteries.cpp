#include "cwpos/batteries.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "cwpos/curvature_io.hpp"
#include "cwpos/errors.hpp"
#include "cwpos/linalg.hpp"
#include "cwpos/schur_calculus.hpp"

namespace cwpos {

using nlohmann::json;

// --- configuration -----------------------------------------------------------

std::string to_string(RunConfig::Command command) {
  switch (command) {
    case RunConfig::Command::VerifyMain: return "verify-main";
    case RunConfig::Command::VerifyC2: return "verify-c2";
    case RunConfig::Command::VerifyIneq: return "verify-ineq";
    case RunConfig::Command::VerifyPushforwards: return "verify-pushforwards";
    case RunConfig::Command::CheckForm: return "check-form";
  }
  return "unknown";
}

RunConfig::Command parse_command(const std::string& name) {
  for (auto c : {RunConfig::Command::VerifyMain, RunConfig::Command::VerifyC2, RunConfig::Command::VerifyIneq,
                 RunConfig::Command::VerifyPushforwards, RunConfig::Command::CheckForm}) {
    if (to_string(c) == name) return c;
  }
  throw InvalidArgument("unknown command: " + name);
}

void RunConfig::validate() const {
  budget.validate();
  if (!(route_tol > 0.0)) throw InvalidArgument("route tolerance must be positive");
  for (int n : dims)
    if (n < 1 || n > 8) throw InvalidArgument("dimensions must lie in [1, 8]");
  for (int r : ranks)
    if (r < 1 || r > 8) throw InvalidArgument("ranks must lie in [1, 8]");
  if (command == Command::VerifyMain || command == Command::VerifyIneq) {
    for (int r : ranks)
      if (r != 3) throw InvalidArgument(to_string(command) + " is a rank-3 battery");
    for (int n : dims)
      if (n < 3) throw InvalidArgument(to_string(command) + " needs n >= 3");
  }
  if (command == Command::VerifyC2) {
    for (int r : ranks)
      if (r < 2) throw InvalidArgument("verify-c2 needs r >= 2");
    for (int n : dims)
      if (n < 2) throw InvalidArgument("verify-c2 needs n >= 2");
  }
  if (command == Command::CheckForm) {
    if (input.empty()) throw InvalidArgument("check-form needs --input");
    for (const auto& v : verdicts) {
      if (v != "weak" && v != "hermitian" && v != "strong") throw InvalidArgument("unknown verdict: " + v);
    }
  }
}

namespace {

json config_json(const RunConfig& cfg, const std::vector<int>& dims, const std::vector<int>& ranks, int samples) {
  json j{{"command", to_string(cfg.command)},
         {"dims", dims},
         {"ranks", ranks},
         {"samples", samples},
         {"seed", cfg.seed},
         {"budget",
          {{"random_starts", cfg.budget.random_starts},
           {"local_iters", cfg.budget.local_iters},
           {"tol", cfg.budget.tol},
           {"rng_seed", cfg.budget.rng_seed}}},
         {"route_tol", cfg.route_tol},
         {"negative", cfg.negative}};
  if (cfg.command == RunConfig::Command::CheckForm) {
    j["input"] = cfg.input;
    j["form"] = cfg.form;
    j["verdicts"] = cfg.verdicts;
  }
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Deviation relative to the larger of the two results and a reference scale,
// normally the size of the terms that cancel in the result.
double relative_deviation(const ExteriorForm& a, const ExteriorForm& b, double reference = 0.0) {
  const double scale = std::max({a.max_abs(), b.max_abs(), reference});
  if (scale == 0.0) return 0.0;
  return (a - b).max_abs() / scale;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw InvalidArgument("");
    } catch (...) {
      throw InvalidArgument("bad integer list: " + text);
    }
  }
  return out;
}

// --- JSON for verdicts ---------------------------------------------------------

json tuple_json(const std::vector<Vector>& tuple) {
  json out = json::array();
  for (const Vector& v : tuple) out.push_back(complex_vector_to_json(v.components));
  return out;
}

std::vector<Vector> tuple_from(const json& doc) {
  std::vector<Vector> out;
  for (const json& v : doc) out.emplace_back(complex_vector_from_json(v));
  return out;
}

json payload_json(const VerdictPayload& payload) {
  struct Visitor {
    json operator()(const std::monostate&) const { return nullptr; }
    json operator()(const PairingWitness& w) const { return {{"type", "pairing"}, {"tuple", tuple_json(w.tuple)}}; }
    json operator()(const HermitianWitness& w) const { return {{"type", "hermitian"}, {"beta", form_to_json(w.beta)}}; }
    json operator()(const DualWitness& w) const { return {{"type", "dual"}, {"v", form_to_json(w.v)}}; }
    json operator()(const SearchRecord& s) const { return {{"type", "search"}, {"argmin", tuple_json(s.argmin)}}; }
    json operator()(const StrongCertificate& c) const {
      json atoms = json::array();
      for (const auto& a : c.atoms) {
        json factors = json::array();
        for (const auto& f : a.factors) factors.push_back(complex_vector_to_json(f.components));
        atoms.push_back(factors);
      }
      return {{"type", "strong_certificate"}, {"atoms", atoms}, {"weights", c.weights}, {"residual", c.residual}};
    }
  };
  return std::visit(Visitor{}, payload);
}

VerdictPayload payload_from(const json& doc) {
  if (doc.is_null()) return std::monostate{};
  const std::string type = doc.at("type").get<std::string>();
  if (type == "pairing") return PairingWitness{tuple_from(doc.at("tuple"))};
  if (type == "hermitian") return HermitianWitness{form_from_json(doc.at("beta"))};
  if (type == "dual") return DualWitness{form_from_json(doc.at("v"))};
  if (type == "search") return SearchRecord{tuple_from(doc.at("argmin"))};
  throw ParseError("unsupported witness type: " + type);
}

json spec_json(const GeneratorSpec& s) {
  return {{"kind", to_string(s.kind)}, {"n", s.n}, {"r", s.r}, {"m", s.m}, {"seed", s.seed}, {"scale", s.scale}};
}

// --- checks ------------------------------------------------------------------

CheckOutcome run_check(const std::string& form, const std::string& test, const ExteriorForm& u,
                       const SearchBudget& budget) {
  CheckOutcome out{form, test, {}, std::nullopt};
  if (test == "weak") {
    out.verdict = check_positive(u, budget);
  } else if (test == "hermitian") {
    out.verdict = check_hermitian_positive(u, budget.tol);
  } else if (test == "strong") {
    out.verdict = check_strongly_positive(u, budget);
  } else {
    throw InvalidArgument("unknown test: " + test);
  }
  if (out.verdict.status == PositivityVerdict::Status::Refuted) out.replay = replay_witness(u, out.verdict);
  return out;
}

void finish_record(SampleRecord& rec, const CurvaturePoint& c) {
  bool refuted = false;
  for (const auto& chk : rec.checks) {
    if (chk.verdict.status != PositivityVerdict::Status::Refuted) continue;
    refuted = true;
    if (!chk.replay || !(*chk.replay < -chk.verdict.tol)) {
      rec.failures.push_back("witness for " + chk.form + " (" + chk.test + ") does not replay below -tol");
    }
  }
  if (refuted) {
    rec.curvature = c;
  } else {
    rec.forms.clear();
  }
}

// Size of a degree-k Chern-Weil expression in c: (max |theta_{ab,jk}| / 2 pi)^k.
double curvature_scale(const CurvaturePoint& c, int k) {
  double m = 0.0;
  for (int a = 0; a < c.rank(); ++a)
    for (int b = 0; b < c.rank(); ++b) m = std::max(m, c.entry(a, b).max_abs());
  return std::pow(m / (2.0 * M_PI), k);
}

void add_route_metric(SampleRecord& rec, const std::string& name, const ExteriorForm& a, const ExteriorForm& b,
                      double reference, double tol) {
  const double dev = relative_deviation(a, b, reference);
  rec.metrics.emplace_back(name, dev);
  if (!(dev <= tol)) {
    std::ostringstream os;
    os << name << " = " << dev << " exceeds " << tol;
    rec.failures.push_back(os.str());
  }
}

SearchBudget sample_budget(const RunConfig& cfg, std::uint64_t sample_seed) {
  SearchBudget b = cfg.budget;
  b.rng_seed = split_seed(cfg.budget.rng_seed ^ sample_seed, 1);
  return b;
}

GeneratorSpec battery_spec(const RunConfig& cfg, std::size_t index, int n, int r, std::uint64_t sample_seed) {
  if (!cfg.negative) return positive_control_spec(index, n, r, sample_seed);
  GeneratorSpec spec;
  spec.n = n;
  spec.r = r;
  spec.m = r;
  spec.kind = GeneratorSpec::Kind::Indefinite;
  spec.seed = sample_seed;
  return spec;
}

Report make_report(const RunConfig& cfg, json config, std::vector<SampleRecord> records) {
  Report rep;
  rep.command = cfg.command;
  rep.timestamp = utc_timestamp();
  rep.config = std::move(config);
  rep.records = std::move(records);
  return rep;
}

}  // namespace

// --- pool --------------------------------------------------------------------

int default_thread_count() {
  if (const char* env = std::getenv("CWPOS_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t > 0) return t;
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 0) threads = default_thread_count();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// --- named forms -------------------------------------------------------------

ExteriorForm named_form(const CharacteristicForms& f, const std::string& name) {
  if (name == "c1^3-c1c2") {
    return wedge_power(f.chern(1), 3) - wedge(f.chern(1), f.chern(2));
  }
  if (name == "c1c2-c3") return wedge(f.chern(1), f.chern(2)) - f.chern(3);
  if (name == "c1s2") return wedge(f.chern(1), f.segre(2));
  if (name.size() >= 3 && (name[0] == 'S' || name[0] == 's') && name[1] == '(' && name.back() == ')') {
    const std::vector<int> sigma = parse_int_list(name.substr(2, name.size() - 3));
    return name[0] == 'S' ? schur_form(f, sigma) : generalized_schur_form(f, sigma);
  }
  if (name.size() >= 2 && (name[0] == 'c' || name[0] == 's') &&
      std::all_of(name.begin() + 1, name.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    const int k = std::stoi(name.substr(1));
    if (name[0] == 'c') return f.chern(k);
    if (k > f.dim()) throw InvalidArgument("Segre degree exceeds n");
    return f.segre(k);
  }
  throw InvalidArgument("unknown form name: " + name);
}

// --- batteries ---------------------------------------------------------------

Report verify_main_theorem(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<int> dims = cfg.dims.empty() ? std::vector<int>{3, 4, 5} : cfg.dims;
  const int samples = cfg.samples < 0 ? 1000 : cfg.samples;
  std::vector<SampleRecord> records(static_cast<std::size_t>(samples));
  parallel_for(records.size(), cfg.threads, [&](std::size_t i) {
    const std::uint64_t seed = split_seed(cfg.seed, i);
    const int n = dims[i % dims.size()];
    SampleRecord rec;
    rec.index = i;
    rec.spec = battery_spec(cfg, i, n, 3, seed);
    rec.expected_positive = rec.spec.positive_control();
    const CurvaturePoint c = sample(rec.spec);
    const CharacteristicForms f(c);
    const ExteriorForm chern_route = schur_form(f, {2, 1, 0});
    const ExteriorForm segre_route = generalized_schur_form(f, {-2, 1, 4});
    add_route_metric(rec, "S(2,1,0) vs s(-2,1,4)", chern_route, segre_route, curvature_scale(c, 3), cfg.route_tol);
    rec.forms.emplace_back("S(2,1,0)", chern_route);
    rec.checks.push_back(run_check("S(2,1,0)", "weak", chern_route, sample_budget(cfg, seed)));
    finish_record(rec, c);
    records[i] = std::move(rec);
  });
  return make_report(cfg, config_json(cfg, dims, {3}, samples), std::move(records));
}

Report verify_c2(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<int> dims = cfg.dims.empty() ? std::vector<int>{2, 3, 4, 5} : cfg.dims;
  const std::vector<int> ranks = cfg.ranks.empty() ? std::vector<int>{2, 3, 4, 5} : cfg.ranks;
  const int per_pair = cfg.samples < 0 ? 200 : cfg.samples;
  const std::size_t pairs = dims.size() * ranks.size();
  std::vector<SampleRecord> records(pairs * static_cast<std::size_t>(per_pair));
  parallel_for(records.size(), cfg.threads, [&](std::size_t i) {
    const std::size_t pair = i / static_cast<std::size_t>(per_pair);
    const int r = ranks[pair / dims.size()];
    const int n = dims[pair % dims.size()];
    const std::uint64_t seed = split_seed(cfg.seed, i);
    SampleRecord rec;
    rec.index = i;
    rec.spec = battery_spec(cfg, i, n, r, seed);
    rec.expected_positive = rec.spec.positive_control();
    const CurvaturePoint c = sample(rec.spec);
    const ExteriorForm c2 = chern_form(c, 2);
    add_route_metric(rec, "c2 vs minor sum", c2, c2_minor_sum(c), curvature_scale(c, 2), cfg.route_tol);
    rec.forms.emplace_back("c2", c2);
    const SearchBudget budget = sample_budget(cfg, seed);
    rec.checks.push_back(run_check("c2", "weak", c2, budget));
    if (n == 2) rec.checks.push_back(run_check("c2", "hermitian", c2, budget));
    finish_record(rec, c);
    records[i] = std::move(rec);
  });
  return make_report(cfg, config_json(cfg, dims, ranks, per_pair), std::move(records));
}

Report verify_inequalities(const RunConfig& cfg) {
  cfg.validate();
  const std::vector<int> dims = cfg.dims.empty() ? std::vector<int>{3, 4} : cfg.dims;
  const int samples = cfg.samples < 0 ? 500 : cfg.samples;
  std::vector<SampleRecord> records(static_cast<std::size_t>(samples));
  parallel_for(records.size(), cfg.threads, [&](std::size_t i) {
    const std::uint64_t seed = split_seed(cfg.seed, i);
    const int n = dims[i % dims.size()];
    SampleRecord rec;
    rec.index = i;
    rec.spec = battery_spec(cfg, i, n, 3, seed);
    rec.expected_positive = rec.spec.positive_control();
    const CurvaturePoint c = sample(rec.spec);
    const CharacteristicForms f(c);
    const SearchBudget budget = sample_budget(cfg, seed);
    const ExteriorForm upper = named_form(f, "c1^3-c1c2");
    const ExteriorForm lower = named_form(f, "c1c2-c3");
    add_route_metric(rec, "c1^3-c1c2 vs c1 s2", upper, named_form(f, "c1s2"), curvature_scale(c, 3), cfg.route_tol);
    add_route_metric(rec, "c1c2-c3 vs s(-2,1,4)", lower, generalized_schur_form(f, {-2, 1, 4}), curvature_scale(c, 3),
                     cfg.route_tol);
    rec.forms.emplace_back("c1^3-c1c2", upper);
    rec.forms.emplace_back("c1c2-c3", lower);
    rec.forms.emplace_back("s2", f.segre(2));
    rec.checks.push_back(run_check("c1^3-c1c2", "weak", upper, budget));
    rec.checks.push_back(run_check("c1c2-c3", "weak", lower, budget));
    rec.checks.push_back(run_check("s2", "weak", f.segre(2), budget));
    finish_record(rec, c);
    records[i] = std::move(rec);
  });
  return make_report(cfg, config_json(cfg, dims, {3}, samples), std::move(records));
}

namespace {

SymPoly xi_monomial(const std::vector<int>& e) { return SymPoly::monomial(Alphabet::Xi, e); }

// all exponent vectors of length r and total degree d
void compositions(int r, int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == r - 1) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int x = d; x >= 0; --x) {
    cur.push_back(x);
    compositions(r, d - x, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> monomials(int r, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (r == 0) return out;
  compositions(r, d, cur, out);
  return out;
}

std::string show(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

struct CheckBuilder {
  SymbolicCheck check;
  explicit CheckBuilder(std::string name) { check.name = std::move(name); check.passed = true; }
  void expect(bool ok, const std::string& what) {
    ++check.cases;
    if (!ok && check.passed) {
      check.passed = false;
      check.detail = "first failure: " + what;
    }
  }
};

SymbolicCheck oracle_equivalence() {
  CheckBuilder b("oracle_equivalence");
  for (int r = 2; r <= 4; ++r) {
    const FlagType flag = FlagType::complete(r);
    const int d = flag.relative_dimension();
    for (int k = 0; k <= 3; ++k) {
      for (const auto& lambda : monomials(r, d + k)) {
        const SymPoly p = xi_monomial(lambda);
        const SymPoly dp = dp_pushforward(p, flag);
        const bool degree_ok = dp.is_zero() || dp.degrees() == std::vector<int>{k};
        b.expect(degree_ok && expand_in_roots(dp, r) == complete_flag_oracle(p, r), "r=" + std::to_string(r) + " xi^" + show(lambda));
      }
    }
  }
  b.check.detail = b.check.passed ? "dp_pushforward == complete_flag_oracle in roots, complete flags r=2..4, k<=3" : b.check.detail;
  return b.check;
}

SymbolicCheck proof_identities() {
  CheckBuilder b("proof_identities");
  const SymPoly rank3 = dp_pushforward(xi_monomial({4, 2, 0}), FlagType::complete(3));
  b.expect(rank3 == gschur_in_segre({-2, 1, 4}), "pi_* xi1^4 xi2^2 == s(-2,1,4)");
  b.expect(segre_to_chern(rank3, 3) == schur_in_chern({2, 1, 0}, 3), "s(-2,1,4) == c1c2 - c3 in rank 3");
  const SymPoly c1c2_c3 = SymPoly::variable(Alphabet::Chern, 1) * SymPoly::variable(Alphabet::Chern, 2) -
                          SymPoly::variable(Alphabet::Chern, 3);
  b.expect(segre_to_chern(rank3, 3) == c1c2_c3, "S(2,1,0) == c1*c2 - c3");
  const SymPoly rank2 = dp_pushforward(xi_monomial({4, 2}), FlagType::complete(2));
  b.expect(rank2 == gschur_in_segre({1, 4}), "q_* xi1^4 xi2^2 == s(1,4)");
  const SymPoly c1c2sq = SymPoly::variable(Alphabet::Chern, 1) * SymPoly::variable(Alphabet::Chern, 2, 2);
  b.expect(segre_to_chern(rank2, 2) == c1c2sq, "s(1,4) == c1*c2^2 when c3 = c4 = 0");
  // the Xi monomial has even degree d_rho + k = 6, so no sign enters
  b.expect(forms_sign_adjust(6, FlagType::complete(3), 3) == 1, "sign for the rank-3 monomial");
  b.expect(forms_sign_adjust(6, FlagType::complete(2), 5) == 1, "sign for the rank-2 monomial");
  return b.check;
}

SymbolicCheck jacobi_trudi_sweep() {
  CheckBuilder b("jacobi_trudi");
  for (int r = 1; r <= 4; ++r)
    for (int k = 0; k <= 6; ++k)
      for (const auto& sigma : enumerate_partitions(k, r)) {
        b.expect(jacobi_trudi_check(sigma, r), "sigma=" + show(sigma) + " r=" + std::to_string(r));
      }
  return b.check;
}

SymbolicCheck tower_consistency() {
  CheckBuilder b("tower_consistency");
  const FlagType complete3 = FlagType::complete(3);
  const FlagType projective({0, 1, 3});
  const FlagType complete2 = FlagType::complete(2);
  for (int deg = 0; deg <= 6; ++deg) {
    for (const auto& lambda : monomials(3, deg)) {
      // q_*: complete flags of the rank-2 quotient with roots xi1, xi2
      const SymPoly q_push = dp_pushforward(xi_monomial({lambda[0], lambda[1]}), complete2);
      const SymPoly on_pe = expand_in_roots(q_push, 2).relabel(Alphabet::Xi) * SymPoly::variable(Alphabet::Xi, 3, lambda[2]);
      const SymPoly composed = expand_in_roots(dp_pushforward(on_pe, projective), 3);
      const SymPoly direct = expand_in_roots(dp_pushforward(xi_monomial(lambda), complete3), 3);
      b.expect(composed == direct, "xi^" + show(lambda));
    }
  }
  return b.check;
}

SymbolicCheck projective_check() {
  CheckBuilder b("projective_oracle");
  for (int r = 2; r <= 4; ++r) {
    std::vector<int> rho{0, 1, r};
    if (r == 1) rho = {0, 1};
    const FlagType flag(rho);
    for (int k = 0; k <= 3; ++k) {
      std::vector<int> lambda(static_cast<std::size_t>(r), 0);
      lambda.back() = r - 1 + k;
      b.expect(dp_pushforward(xi_monomial(lambda), flag) == projective_oracle(k, r),
               "r=" + std::to_string(r) + " k=" + std::to_string(k));
    }
  }
  // through the tower: pi_*(xi2 xi3^{k+2}) = p_*(xi3^{k+2} q_* xi2) = p_*(xi3^{k+2}) = s_k
  for (int k = 0; k <= 3; ++k) {
    b.expect(complete_flag_oracle(xi_monomial({0, 1, k + 2}), 3) == expand_in_roots(projective_oracle(k, 3), 3),
             "tower k=" + std::to_string(k));
  }
  return b.check;
}

SymbolicCheck schur_product_positivity() {
  CheckBuilder b("schur_product_positivity");
  for (int r = 1; r <= 4; ++r) {
    for (int a = 0; a <= 6; ++a) {
      for (int c = 0; a + c <= 6; ++c) {
        for (const auto& sigma : enumerate_partitions(a, r)) {
          for (const auto& tau : enumerate_partitions(c, r)) {
            const auto coeffs = schur_product_expand(sigma, tau, r);
            bool nonneg = true;
            for (const auto& [lambda, v] : coeffs) nonneg = nonneg && v >= 0;
            b.expect(nonneg, show(sigma) + "*" + show(tau) + " r=" + std::to_string(r));
          }
        }
      }
    }
  }
  return b.check;
}

}  // namespace

Report verify_pushforwards(const RunConfig& cfg) {
  Report rep = make_report(cfg, config_json(cfg, {}, {2, 3, 4}, 0), {});
  rep.symbolic.push_back(oracle_equivalence());
  rep.symbolic.push_back(proof_identities());
  rep.symbolic.push_back(jacobi_trudi_sweep());
  rep.symbolic.push_back(tower_consistency());
  rep.symbolic.push_back(projective_check());
  rep.symbolic.push_back(schur_product_positivity());
  return rep;
}

Report check_form_file(const RunConfig& cfg) {
  cfg.validate();
  const CurvaturePoint c = read_curvature_file(cfg.input);
  const CharacteristicForms f(c);
  SampleRecord rec;
  rec.source = cfg.input;
  rec.spec.n = c.dim();
  rec.spec.r = c.rank();
  rec.expected_positive = false;
  const ExteriorForm u = named_form(f, cfg.form);
  rec.forms.emplace_back(cfg.form, u);
  const GriffithsReport g = griffiths_minimum(c, cfg.budget);
  rec.metrics.emplace_back("griffiths_min", g.min_value);
  for (const auto& test : cfg.verdicts) rec.checks.push_back(run_check(cfg.form, test, u, cfg.budget));
  finish_record(rec, c);
  rec.curvature = c;
  rec.forms = {{cfg.form, u}};
  return make_report(cfg, config_json(cfg, {c.dim()}, {c.rank()}, 1), {std::move(rec)});
}

Report run(const RunConfig& cfg) {
  switch (cfg.command) {
    case RunConfig::Command::VerifyMain: return verify_main_theorem(cfg);
    case RunConfig::Command::VerifyC2: return verify_c2(cfg);
    case RunConfig::Command::VerifyIneq: return verify_inequalities(cfg);
    case RunConfig::Command::VerifyPushforwards: return verify_pushforwards(cfg);
    case RunConfig::Command::CheckForm: return check_form_file(cfg);
  }
  throw InvalidArgument("unknown command");
}

// --- report ------------------------------------------------------------------

std::size_t Report::count(PositivityVerdict::Status status) const {
  std::size_t k = 0;
  for (const auto& rec : records)
    for (const auto& chk : rec.checks) k += chk.verdict.status == status;
  return k;
}

std::size_t Report::unexpected_refutations() const {
  std::size_t k = 0;
  for (const auto& rec : records) {
    if (!rec.expected_positive) continue;
    for (const auto& chk : rec.checks) k += chk.verdict.status == PositivityVerdict::Status::Refuted;
  }
  return k;
}

std::size_t Report::failures() const {
  std::size_t k = 0;
  for (const auto& rec : records) k += rec.failures.size();
  for (const auto& s : symbolic) k += !s.passed;
  return k;
}

json Report::to_json(bool include_timestamp) const {
  json recs = json::array();
  double min_margin = std::numeric_limits<double>::infinity();
  double max_route = 0.0;
  for (const auto& rec : records) {
    json checks = json::array();
    for (const auto& chk : rec.checks) {
      json c{{"form", chk.form},
             {"test", chk.test},
             {"status", to_string(chk.verdict.status)},
             {"margin", chk.verdict.margin},
             {"heuristic", chk.verdict.heuristic},
             {"tol", chk.verdict.tol},
             {"witness", payload_json(chk.verdict.payload)}};
      if (chk.replay) c["replay"] = *chk.replay;
      checks.push_back(std::move(c));
      min_margin = std::min(min_margin, chk.verdict.margin);
    }
    json metrics = json::object();
    for (const auto& [name, value] : rec.metrics) {
      metrics[name] = value;
      if (name.find(" vs ") != std::string::npos) max_route = std::max(max_route, value);
    }
    json r{{"index", rec.index},
           {"source", rec.source},
           {"generator", spec_json(rec.spec)},
           {"expected_positive", rec.expected_positive},
           {"checks", checks},
           {"metrics", metrics},
           {"failures", rec.failures}};
    if (rec.curvature) {
      r["curvature"] = curvature_to_json(*rec.curvature);
      json forms = json::object();
      for (const auto& [name, u] : rec.forms) forms[name] = form_to_json(u);
      r["forms"] = forms;
    }
    recs.push_back(std::move(r));
  }
  json symb = json::array();
  for (const auto& s : symbolic) {
    symb.push_back({{"name", s.name}, {"passed", s.passed}, {"cases", s.cases}, {"detail", s.detail}});
  }
  json agg{{"samples", records.size()},
           {"certified", count(PositivityVerdict::Status::Certified)},
           {"refuted", count(PositivityVerdict::Status::Refuted)},
           {"unknown", count(PositivityVerdict::Status::Unknown)},
           {"unexpected_refutations", unexpected_refutations()},
           {"failures", failures()},
           {"max_route_deviation", max_route},
           {"ok", ok()}};
  if (std::isfinite(min_margin)) agg["min_margin"] = min_margin;
  json out{{"version", version}, {"command", to_string(command)}, {"config", config}, {"aggregates", agg},
           {"records", recs}, {"symbolic", symb}};
  if (include_timestamp) out["timestamp"] = timestamp;
  return out;
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "index,source,kind,n,r,form,test,status,margin,replay\n";
  for (const auto& rec : records) {
    for (const auto& chk : rec.checks) {
      os << rec.index << ',' << rec.source << ',' << to_string(rec.spec.kind) << ',' << rec.spec.n << ',' << rec.spec.r
         << ",\"" << chk.form << "\"," << chk.test << ',' << to_string(chk.verdict.status) << ',' << chk.verdict.margin
         << ',';
      if (chk.replay) os << *chk.replay;
      os << '\n';
    }
  }
  for (const auto& s : symbolic) {
    os << "," << s.name << ",,,,," << "symbolic" << ',' << (s.passed ? "passed" : "failed") << ',' << s.cases << ",\n";
  }
  return os.str();
}

std::vector<ReplayResult> replay_report(const json& report) {
  std::vector<ReplayResult> out;
  for (const json& rec : report.at("records")) {
    for (const json& chk : rec.at("checks")) {
      if (chk.at("status").get<std::string>() != "refuted") continue;
      ReplayResult res;
      res.index = rec.at("index").get<std::size_t>();
      res.form = chk.at("form").get<std::string>();
      res.test = chk.at("test").get<std::string>();
      res.tol = chk.at("tol").get<double>();
      const ExteriorForm u = form_from_json(rec.at("forms").at(res.form));
      PositivityVerdict v;
      v.status = PositivityVerdict::Status::Refuted;
      v.payload = payload_from(chk.at("witness"));
      res.value = replay_witness(u, v);
      const CurvaturePoint c = curvature_from_json(rec.at("curvature"));
      res.form_deviation = relative_deviation(u, named_form(CharacteristicForms(c), res.form));
      out.push_back(res);
    }
  }
  return out;
}

}  // namespace cwpos
