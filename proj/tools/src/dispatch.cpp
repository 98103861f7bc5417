#include "invset_cli/dispatch.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

#include "invset/dynamics.hpp"
#include "invset/errors.hpp"
#include "invset/experiments.hpp"
#include "invset/hilbertbits.hpp"
#include "invset/numbertheory.hpp"
#include "invset/padic.hpp"
#include "invset/rng.hpp"

#ifndef INVSET_VERSION
#define INVSET_VERSION "0.0.0"
#endif

namespace invset::cli {

std::string version() { return INVSET_VERSION; }

namespace {

struct Options {
  unsigned order = 8;
  std::string seed;
  std::string format = "records";
  std::string out;
  std::uint64_t trials = 100000;
  unsigned resolution = 16;
};

// Per-invocation state: the record under construction and the writer.
class Context {
 public:
  Context(const Options& opt, const Environment& env, RecordWriter& writer)
      : opt_(opt), env_(env), writer_(writer) {}

  const Options& opt() const { return opt_; }

  RunRecord& begin(std::string command) {
    pending_ = RunRecord{};
    pending_->command = std::move(command);
    pending_->version = version();
    return *pending_;
  }

  /// Resolves --seed, then the environment, then 0, and echoes it.
  std::uint64_t seed() {
    std::string source = "default";
    std::uint64_t s = 0;
    if (!opt_.seed.empty()) {
      s = parse_hex_seed(opt_.seed);
      source = "flag";
    } else if (env_.default_seed) {
      s = parse_hex_seed(*env_.default_seed);
      source = "env";
    }
    if (pending_) {
      pending_->seed = format_hex_seed(s);
      pending_->param("seed_source", source);
    }
    return s;
  }

  void emit() {
    if (pending_) writer_.write(*pending_);
    pending_.reset();
  }
  void emit(const RunRecord& r) { writer_.write(r); }

  /// Flags and writes an interrupted record.
  void abandon(const std::string& flag) {
    if (!pending_) return;
    pending_->flag(flag);
    emit();
  }

 private:
  const Options& opt_;
  const Environment& env_;
  RecordWriter& writer_;
  std::optional<RunRecord> pending_;
};

Rational exact_double(double x) {
  mpq_class q(x);
  return Rational(Integer(q.get_num()), Integer(q.get_den()));
}

std::string bits_or_runs(const BitString& s) { return s.order() <= 12 ? s.str() : s.run_length(); }

std::vector<Rational> parse_rationals(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  for (const auto& s : items) out.push_back(Rational::parse(s));
  return out;
}

template <std::size_t K>
std::array<Rational, K> rational_triple(const std::vector<std::string>& items, const char* what) {
  if (items.size() != K) throw std::invalid_argument(std::string(what) + " needs " + std::to_string(K) + " values");
  std::array<Rational, K> out;
  for (std::size_t i = 0; i < K; ++i) out[i] = Rational::parse(items[i]);
  return out;
}

std::array<long long, 3> phase_triple(const std::vector<long long>& items) {
  if (items.empty()) return {0, 0, 0};
  if (items.size() != 3) throw std::invalid_argument("--phases needs 3 values");
  return {items[0], items[1], items[2]};
}

void add_joint_results(RunRecord& rec, const TwoQubitState& state) {
  const auto g = joint_frequencies(state);
  static const char* names[] = {"p_a_b", "p_a_notb", "p_nota_b", "p_nota_notb"};
  for (int i = 0; i < 4; ++i) rec.result(names[i], g[i]);
  rec.result("correlation", correlation(state));
  rec.artifact("sa", bits_or_runs(state.sa()));
  rec.artifact("sb", bits_or_runs(state.sb()));
}

std::string cosine_key(int x, int y) { return "C" + std::to_string(x) + std::to_string(y); }

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Finite bit-string models of quantum experiments", "invset"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--N", opt.order, "String order N (2^N elements)")->check(CLI::Range(1u, kMaxOrder));
  app.add_option("--seed", opt.seed, "Seed as hex (default from " + std::string(kSeedEnvVar) + ")");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"records", "csv"}));
  app.add_option("--out", opt.out, "Output file (default stdout)");
  app.add_option("--trials", opt.trials, "Random trials for scans");
  app.add_option("--resolution", opt.resolution, "Grid resolution for scans")->check(CLI::Range(8u, 1024u));

  using Handler = std::function<void(Context&)>;
  std::vector<std::pair<CLI::App*, Handler>> leaves;

  // padic ------------------------------------------------------------------
  auto* padic = app.add_subcommand("padic", "p-adic metric and Cantor embedding")->require_subcommand(1);
  {
    auto* cmd = padic->add_subcommand("dist", "p-adic distance |x - y|_p");
    auto p = std::make_shared<unsigned>(2);
    auto x = std::make_shared<std::string>();
    auto y = std::make_shared<std::string>();
    cmd->add_option("--p", *p, "Prime")->required();
    cmd->add_option("--x", *x, "Rational")->required();
    cmd->add_option("--y", *y, "Rational")->required();
    leaves.emplace_back(cmd, [=](Context& ctx) {
      auto& rec = ctx.begin("padic dist");
      rec.param("p", std::to_string(*p));
      const auto a = Rational::parse(*x);
      const auto b = Rational::parse(*y);
      rec.param("x", a.str());
      rec.param("y", b.str());
      rec.result("distance", padic_dist(a, b, *p));
      if (const auto o = ord_p(a - b, *p)) rec.result("ord", Rational(*o));
      ctx.emit();
    });
  }
  {
    auto* cmd = padic->add_subcommand("embed", "Cantor-set image of a truncated p-adic integer");
    auto p = std::make_shared<unsigned>(2);
    auto x = std::make_shared<std::string>();
    auto depth = std::make_shared<unsigned>(8);
    cmd->add_option("--p", *p, "Prime")->required();
    cmd->add_option("--x", *x, "Rational with denominator prime to p")->required();
    cmd->add_option("--depth", *depth, "Truncation depth")->check(CLI::Range(1u, 4096u));
    leaves.emplace_back(cmd, [=](Context& ctx) {
      auto& rec = ctx.begin("padic embed");
      const auto a = Rational::parse(*x);
      rec.param("p", std::to_string(*p));
      rec.param("x", a.str());
      rec.param("depth", std::to_string(*depth));
      const auto z = PAdicInt::from_rational(a, *p, *depth);
      std::string digits;
      for (auto d : z.digits()) digits += (digits.empty() ? "" : ",") + std::to_string(d);
      rec.artifact("digits", digits);
      rec.result("truncated_value", Rational(z.value()));
      rec.result("cantor", cantor_embed(z).value);
      ctx.emit();
    });
  }

  // niven ------------------------------------------------------------------
  auto* niven = app.add_subcommand("niven", "Rationality of cos at rational multiples of pi")->require_subcommand(1);
  {
    auto* cmd = niven->add_subcommand("classify", "Classify an angle");
    auto phi = std::make_shared<std::string>();
    cmd->add_option("--phi", *phi, "Angle: 'm/n pi' or 'cos=p/q'")->required();
    leaves.emplace_back(cmd, [=](Context& ctx) {
      auto& rec = ctx.begin("niven classify");
      const auto angle = parse_angle(*phi);
      rec.param("phi", angle_str(angle));
      const auto d = classify_angle(angle);
      if (d.phi_over_pi) rec.result("phi_over_pi", *d.phi_over_pi);
      else rec.flag("PHI_OVER_PI_IRRATIONAL");
      if (d.cos_phi) rec.result("cos", *d.cos_phi);
      else rec.flag("COS_IRRATIONAL");
      rec.param("kind", to_string(d.kind));
      ctx.emit();
    });
  }

  // qubit ------------------------------------------------------------------
  auto* qubit = app.add_subcommand("qubit", "Bit-string qubit states")->require_subcommand(1);
  {
    auto* cmd = qubit->add_subcommand("build", "Build a one- or two-qubit sample space");
    auto cosv = std::make_shared<std::string>();
    auto phase = std::make_shared<unsigned long long>(0);
    auto weights = std::make_shared<std::vector<std::string>>();
    auto phases = std::make_shared<std::vector<long long>>();
    auto form = std::make_shared<std::string>("A");
    auto convert = std::make_shared<bool>(false);
    cmd->add_option("--cos", *cosv, "One qubit: dyadic cos(theta)");
    cmd->add_option("--phase", *phase, "One qubit: rotation steps n");
    cmd->add_option("--weights", *weights, "Two qubits: three cos^2 weights")->delimiter(',');
    cmd->add_option("--phases", *phases, "Two qubits: three rotation amounts")->delimiter(',');
    cmd->add_option("--form", *form, "Two-qubit layout form")->check(CLI::IsMember({"A", "B"}));
    cmd->add_flag("--convert", *convert, "Convert a form-A state to form B");
    leaves.emplace_back(cmd, [=](Context& ctx) {
      const unsigned N = ctx.opt().order;
      if (weights->empty()) {
        if (cosv->empty()) throw std::invalid_argument("qubit build needs --cos or --weights");
        auto& rec = ctx.begin("qubit build");
        const auto c = Rational::parse(*cosv);
        rec.param("N", std::to_string(N));
        rec.param("cos", c.str());
        rec.param("phase", std::to_string(*phase));
        const Rational w = (Rational(1) + c) / Rational(2) * Rational(Integer(1) << N);
        if (!w.is_integer()) throw NotRepresentable("2^N cos^2(theta/2) = " + w.str() + " is not an integer");
        const auto s = build_one_qubit({N, w.numerator().get_ui(), *phase});
        rec.result("born_probability", born_probability(s));
        rec.artifact("s", bits_or_runs(s));
        ctx.emit();
        return;
      }
      auto& rec = ctx.begin("qubit build");
      const auto w = rational_triple<3>(*weights, "--weights");
      const auto ph = phase_triple(*phases);
      rec.param("N", std::to_string(N));
      rec.param("form", *form);
      rec.param("weights", w[0].str() + "," + w[1].str() + "," + w[2].str());
      rec.param("phases", std::to_string(ph[0]) + "," + std::to_string(ph[1]) + "," + std::to_string(ph[2]));
      auto state = *form == "A" ? build_two_qubit_formA(N, w, ph) : build_two_qubit_formB(N, w, ph);
      if (*convert) {
        if (*form != "A") throw std::invalid_argument("--convert needs --form A");
        state = convert_formA_to_formB(state);
        const auto& bw = state.layout().weights;
        rec.param("converted_weights", bw[0].str() + "," + bw[1].str() + "," + bw[2].str());
      }
      add_joint_results(rec, state);
      ctx.emit();
    });
  }
  {
    auto* cmd = qubit->add_subcommand("correlate", "Bell-type layout and its counted correlation");
    auto cosv = std::make_shared<std::string>();
    auto anti = std::make_shared<bool>(false);
    cmd->add_option("--cos", *cosv, "Dyadic cos(theta)")->required();
    cmd->add_flag("--anti", *anti, "Complement S_b (anti-correlated layout)");
    leaves.emplace_back(cmd, [=](Context& ctx) {
      auto& rec = ctx.begin("qubit correlate");
      const auto c = Rational::parse(*cosv);
      rec.param("N", std::to_string(ctx.opt().order));
      rec.param("cos", c.str());
      rec.param("anti", *anti ? "true" : "false");
      if (!is_dyadic(c)) throw InconsistentHistory("cos = " + c.str() + " is not finitely describable");
      auto state = build_bell_layout(ctx.opt().order, c);
      if (*anti) state = anti_correlated(state);
      add_joint_results(rec, state);
      ctx.emit();
    });
  }

  // mz ---------------------------------------------------------------------
  auto* mz = app.add_subcommand("mz", "Mach-Zehnder interferometer")->require_subcommand(1);
  {
    auto* cmd = mz->add_subcommand("run", "Detector probabilities on the bit-string sample space");
    auto mode = std::make_shared<std::string>("momentum");
    auto phi = std::make_shared<std::string>();
    cmd->add_option("--mode", *mode, "momentum or position")->check(CLI::IsMember({"momentum", "position"}));
    cmd->add_option("--phi", *phi, "Phase angle: 'm/n pi' or 'cos=p/q'")->required();
    leaves.emplace_back(cmd, [=](Context& ctx) {
      auto& rec = ctx.begin("mz run");
      const auto angle = parse_angle(*phi);
      rec.param("N", std::to_string(ctx.opt().order));
      rec.param("mode", *mode);
      rec.param("phi", angle_str(angle));
      const auto r = mach_zehnder({*mode == "momentum" ? MzMode::Momentum : MzMode::Position, angle, ctx.opt().order});
      rec.param("kind", to_string(r.angle.kind));
      rec.result("p_detector_a", r.p_detector_a);
      rec.result("p_detector_not_a", r.p_detector_not_a);
      rec.artifact("sample_space", bits_or_runs(r.sample_space));
      ctx.emit();
    });
  }

  // chsh -------------------------------------------------------------------
  auto* chsh = app.add_subcommand("chsh", "CHSH on disjoint sample spaces")->require_subcommand(1);
  {
    auto* cmd = chsh->add_subcommand("run", "Model CHSH statistic from dyadic cosines");
    auto cosines = std::make_shared<std::vector<std::string>>();
    auto signs = std::make_shared<std::string>("+++-");
    auto query = std::make_shared<std::string>();
    auto z = std::make_shared<int>(-1);
    cmd->add_option("--cos", *cosines, "One cosine for all pairings, or C00,C01,C10,C11")
        ->delimiter(',')
        ->required();
    cmd->add_option("--signs", *signs, "Signs of C00 C01 C10 C11 (3 chars: C00 is +)");
    cmd->add_option("--query", *query, "Single pairing 'xy' to evaluate");
    cmd->add_option("--z", *z, "Sample space parity for --query")->check(CLI::Range(0, 1));
    leaves.emplace_back(cmd, [=](Context& ctx) {
      auto& rec = ctx.begin(query->empty() ? "chsh run" : "chsh query");
      const unsigned N = ctx.opt().order;
      auto c = parse_rationals(*cosines);
      if (c.size() == 1) c.assign(4, c[0]);
      if (c.size() != 4) throw std::invalid_argument("--cos needs 1 or 4 values");
      std::string sg = *signs;
      if (sg.size() == 3) sg = "+" + sg;
      if (sg.size() != 4 || sg.find_first_not_of("+-") != std::string::npos) {
        throw std::invalid_argument("--signs needs 3 or 4 characters from '+-'");
      }
      const auto s = [&](int i) { return sg[static_cast<std::size_t>(i)] == '-' ? -1 : 1; };
      rec.param("N", std::to_string(N));
      rec.param("cos", c[0].str() + "," + c[1].str() + "," + c[2].str() + "," + c[3].str());
      rec.param("signs", sg);
      const ChshConfig z0{N, 0, {c[0], c[3]}, {s(0), s(3)}};
      const ChshConfig z1{N, 1, {c[1], c[2]}, {s(1), s(2)}};
      if (!query->empty()) {
        if (query->size() != 2 || query->find_first_not_of("01") != std::string::npos) {
          throw std::invalid_argument("--query must be one of 00, 01, 10, 11");
        }
        const Pairing pr{(*query)[0] - '0', (*query)[1] - '0'};
        const int parity = *z < 0 ? pr.parity() : *z;
        rec.param("pairing", *query);
        rec.param("z", std::to_string(parity));
        rec.result(cosine_key(pr.x, pr.y), chsh_correlation(parity == 0 ? z0 : z1, pr));
        ctx.emit();
        return;
      }
      const auto r = chsh_statistic(z0, z1);
      for (int i = 0; i < 4; ++i) rec.result(cosine_key(i / 2, i % 2), r.correlations[static_cast<std::size_t>(i)]);
      rec.result("S", r.statistic);
      rec.result("classical_bound", classical_chsh_bound());
      if (r.violated) rec.flag("BELL_VIOLATED");
      ctx.emit();
    });
  }
  {
    auto* cmd = chsh->add_subcommand("scan-tsirelson", "Numeric scan of the quantum CHSH maximum");
    auto threads = std::make_shared<unsigned>(0);
    cmd->add_option("--threads", *threads, "Worker threads (0: hardware)");
    leaves.emplace_back(cmd, [=](Context& ctx) {
      auto& rec = ctx.begin("chsh scan-tsirelson");
      const auto seed = ctx.seed();
      rec.param("resolution", std::to_string(ctx.opt().resolution));
      rec.param("trials", std::to_string(ctx.opt().trials));
      const auto r = tsirelson_scan(ctx.opt().resolution, ctx.opt().trials, seed, *threads);
      rec.result("max_S", exact_double(r.max_statistic));
      rec.result("tsirelson_bound", QuadExtElement(Rational(0), Rational(2), Integer(2)));
      rec.result("evaluations", Rational(Integer(std::to_string(r.evaluations))));
      if (r.max_statistic > 2) rec.flag("BELL_VIOLATED");
      if (r.max_statistic <= 2 * std::sqrt(2.0) + 1e-9) rec.flag("WITHIN_TSIRELSON");
      ctx.emit();
    });
  }

  // pbr --------------------------------------------------------------------
  auto* pbr = app.add_subcommand("pbr", "PBR output probabilities")->require_subcommand(1);
  {
    auto* cmd = pbr->add_subcommand("eval", "Evaluate X and Z and their describability");
    auto theta = std::make_shared<std::string>();
    auto alpha = std::make_shared<std::string>();
    auto beta = std::make_shared<std::string>();
    auto offset = std::make_shared<std::string>();
    cmd->add_option("--theta", *theta, "Preparation angle")->required();
    cmd->add_option("--alpha", *alpha, "Phase alpha");
    cmd->add_option("--beta", *beta, "Phase beta")->required();
    cmd->add_option("--offset", *offset, "alpha - 2 beta (instead of --alpha)");
    leaves.emplace_back(cmd, [=](Context& ctx) {
      auto& rec = ctx.begin("pbr eval");
      if (alpha->empty() == offset->empty()) throw std::invalid_argument("give exactly one of --alpha, --offset");
      const auto th = parse_angle(*theta);
      const auto be = parse_angle(*beta);
      const auto angles = offset->empty() ? PbrAngles::from_alpha_beta(th, parse_angle(*alpha), be)
                                          : PbrAngles::from_offset(th, parse_angle(*offset), be);
      rec.param("N", std::to_string(ctx.opt().order));
      rec.param("theta", angle_str(th));
      if (offset->empty()) rec.param("alpha", angle_str(angles.alpha));
      else rec.param("alpha_minus_2beta", angle_str(*angles.alpha_minus_2beta));
      rec.param("beta", angle_str(be));
      const auto probs = pbr_probabilities(angles);
      for (const auto& [key, v] : {std::pair{"X", &probs.x}, std::pair{"Z", &probs.z}}) {
        if (v->exact) rec.result(key, *v->exact);
        else rec.result_numeric(key, v->decimal);
      }
      const auto report = pbr_describability_report(angles, ctx.opt().order);
      const std::pair<const char*, const DescribedCosine*> cosines[] = {
          {"cos_alpha_minus_2beta", &report.cos_alpha_minus_2beta},
          {"cos_alpha_minus_beta", &report.cos_alpha_minus_beta},
          {"cos_beta", &report.cos_beta}};
      for (const auto& [key, d] : cosines) {
        if (d->exact) rec.result(key, *d->exact);
        rec.param(std::string(key) + ".kind", to_string(d->kind));
      }
      if (report.x_n_bit) rec.flag("X_N_BIT");
      if (report.z_n_bit) rec.flag("Z_N_BIT");
      if (report.simultaneous) rec.flag("SIMULTANEOUS_N_BIT");
      if (report.incompatibility_certified) rec.flag("INCOMPATIBILITY_CERTIFIED");
      ctx.emit();
    });
  }

  // dynamics ---------------------------------------------------------------
  auto* dyn = app.add_subcommand("dynamics", "Shift-map selection, Ruban test, Dirac evolution")->require_subcommand(1);
  {
    auto* cmd = dyn->add_subcommand("ruban", "Digit frequencies of Haar-random p-adic integers");
    auto p = std::make_shared<unsigned>(2);
    auto depth = std::make_shared<unsigned>(64);
    auto samples = std::make_shared<std::uint64_t>(100000);
    cmd->add_option("--p", *p, "Prime");
    cmd->add_option("--depth", *depth, "Digits per sample")->check(CLI::Range(1u, 4096u));
    cmd->add_option("--samples", *samples, "Number of samples (>= 1000)");
    leaves.emplace_back(cmd, [=](Context& ctx) {
      auto& rec = ctx.begin("dynamics ruban");
      const auto seed = ctx.seed();
      rec.param("p", std::to_string(*p));
      rec.param("depth", std::to_string(*depth));
      rec.param("samples", std::to_string(*samples));
      const auto r = ruban_frequency_test(*p, *depth, *samples, seed);
      const Integer total = Integer(std::to_string(*samples)) * *depth;
      for (unsigned d = 0; d < *p; ++d) {
        rec.result("f" + std::to_string(d), Rational(Integer(std::to_string(r.counts[d])), total));
      }
      rec.result("max_deviation", exact_double(r.max_deviation));
      rec.result("sigma", exact_double(r.sigma));
      rec.flag(r.pass ? "RUBAN_PASS" : "RUBAN_FAIL");
      ctx.emit();
    });
  }
  {
    auto* cmd = dyn->add_subcommand("dirac", "Rest-frame counter-rotation of a spinor pair");
    auto sa = std::make_shared<std::string>();
    auto sb = std::make_shared<std::string>();
    auto rate = std::make_shared<long long>(1);
    auto ticks = std::make_shared<long long>(1);
    auto energy = std::make_shared<std::string>();
    cmd->add_option("--sa", *sa, "Upper string as 0/1 text (random when absent)");
    cmd->add_option("--sb", *sb, "Lower string as 0/1 text (random when absent)");
    cmd->add_option("--rate", *rate, "Rotation steps n per tick");
    cmd->add_option("--ticks", *ticks, "Number of ticks");
    cmd->add_option("--energy", *energy, "Rest energy E (hbar = 1) for the time granularity");
    leaves.emplace_back(cmd, [=](Context& ctx) {
      auto& rec = ctx.begin("dynamics dirac");
      const unsigned N = ctx.opt().order;
      std::optional<BitString> upper, lower;
      if (!sa->empty()) upper = BitString::parse(*sa);
      if (!sb->empty()) lower = BitString::parse(*sb);
      if (!upper || !lower) {
        Rng rng(ctx.seed());
        const auto random_string = [&](unsigned order) {
          std::vector<Symbol> sym(std::size_t{1} << order);
          for (auto& s : sym) s = rng.below(2) ? Symbol::A : Symbol::NotA;
          return BitString(order, std::move(sym));
        };
        const unsigned order = upper ? upper->order() : lower ? lower->order() : N;
        if (!upper) upper = random_string(order);
        if (!lower) lower = random_string(order);
      }
      if (upper->order() != lower->order()) throw std::invalid_argument("--sa and --sb need the same length");
      rec.param("N", std::to_string(upper->order()));
      rec.param("rate", std::to_string(*rate));
      rec.param("ticks", std::to_string(*ticks));
      rec.artifact("sa_initial", bits_or_runs(*upper));
      rec.artifact("sb_initial", bits_or_runs(*lower));
      const DiracState start{SpinorPair{*upper, *lower}, *rate, 0};
      const auto end = dirac_evolve(start, *ticks);
      rec.artifact("sa", bits_or_runs(end.pair.upper));
      rec.artifact("sb", bits_or_runs(end.pair.lower));
      rec.result("tick", Rational(end.tick));
      rec.result("count_a_upper", Rational(static_cast<long>(end.pair.upper.count(Symbol::A))));
      rec.result("count_a_lower", Rational(static_cast<long>(end.pair.lower.count(Symbol::A))));
      if (end.pair == start.pair) rec.flag("RETURNED_TO_START");
      if (!energy->empty()) {
        const auto ef = energy_frequency(Rational::parse(*energy), upper->order());
        rec.result("omega", ef.omega);
        rec.result("delta_t_over_pi", ef.delta_t_pi);
        rec.result("steps_per_unit_times_pi", ef.steps_per_unit_over_pi);
      }
      ctx.emit();
    });
  }

  // selftest ---------------------------------------------------------------
  auto* selftest = app.add_subcommand("selftest", "Run the embedded invariant suite");
  bool selftest_failed = false;
  leaves.emplace_back(selftest, [&](Context& ctx) {
    ctx.begin("selftest");
    const auto seed = ctx.seed();
    for (const auto& r : run_selftest(seed, ctx.opt().order)) {
      if (std::find(r.flags.begin(), r.flags.end(), "FAIL") != r.flags.end()) selftest_failed = true;
      ctx.emit(r);
    }
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << opt.out << "\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = opt.out.empty() ? out : file;
  RecordWriter writer(sink, opt.format == "csv" ? Format::Csv : Format::Records);
  Context ctx(opt, env, writer);

  for (auto& [cmd, handler] : leaves) {
    if (!cmd->parsed()) continue;
    try {
      handler(ctx);
    } catch (const InconsistentHistory& e) {
      ctx.abandon("INCONSISTENT_HISTORY");
      err << "refused: " << e.what() << "\n";
      return kExitRefusal;
    } catch (const WrongSampleSpace& e) {
      ctx.abandon("WRONG_SAMPLE_SPACE");
      err << "refused: " << e.what() << "\n";
      return kExitRefusal;
    } catch (const NotRepresentable& e) {
      ctx.abandon("NOT_REPRESENTABLE");
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const SeedExhausted& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "internal error: " << e.what() << "\n";
      return kExitInvariant;
    }
    sink.flush();
    return selftest_failed ? kExitInvariant : kExitOk;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace invset::cli
