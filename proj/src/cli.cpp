#include "echo/cli.hpp"

#include "echo/agl_group.hpp"
#include "echo/density_engine.hpp"
#include "echo/echo_seq.hpp"
#include "echo/family_fabulous.hpp"
#include "echo/kernels/kernels.hpp"
#include "echo/report.hpp"
#include "echo/verify.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace echo {

unsigned default_threads() {
  if (const char* env = std::getenv("ECHO_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Raised for contract failures detected by the CLI itself.
struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_count(const std::string& text, const char* what) {
  ExactRat q = parse_rational(text);
  if (q.get_den() != 1 || sgn(q) <= 0 || !q.get_num().fits_ulong_p()) {
    throw std::invalid_argument(std::string(what) + " must be a positive integer: " + text);
  }
  return q.get_num().get_ui();
}

std::string render(const AglElem& e) {
  std::ostringstream os;
  os << "((" << e.v[0] << ',' << e.v[1] << "),[[" << e.M[0] << ',' << e.M[1] << "],[" << e.M[2] << ',' << e.M[3]
     << "]])";
  return os.str();
}

std::string render(const RatPoint& p) {
  if (p.infinity) return "O";
  return "(" + to_fraction_string(p.x) + ", " + to_fraction_string(p.y) + ")";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ECHO sequence, odd-order primes and 2-adic image toolkit", "echo"};
  app.require_subcommand(1);

  // seq
  long seq_from = 0, seq_to = 10;
  bool seq_alt = false, seq_json = false;
  auto* seq = app.add_subcommand("seq", "Print terms b_n for n in [from, to]");
  seq->add_option("--from", seq_from, "First index")->required();
  seq->add_option("--to", seq_to, "Last index")->required();
  seq->add_flag("--alt", seq_alt, "Use the order-7 bilinear recurrence");
  seq->add_flag("--json", seq_json, "JSON output");

  // point
  long point_n = 0;
  auto* point = app.add_subcommand("point", "Compare (2K+1)P from the sequence and from the group law");
  point->add_option("--n", point_n, "K")->required()->check(CLI::NonNegativeNumber);

  // tate
  std::string ta1 = "0", ta2 = "0", ta3 = "0", ta4 = "0", ta6 = "0", tpx, tpy;
  auto* tate = app.add_subcommand("tate", "Tate normal form of a curve with a marked point");
  tate->add_option("--a1", ta1);
  tate->add_option("--a2", ta2);
  tate->add_option("--a3", ta3);
  tate->add_option("--a4", ta4);
  tate->add_option("--a6", ta6);
  tate->add_option("--px", tpx)->required();
  tate->add_option("--py", tpy)->required();

  // sweep
  std::string sweep_max;
  unsigned sweep_threads = 0;
  std::string sweep_csv, sweep_ckpt;
  bool sweep_json = false;
  auto* sw = app.add_subcommand("sweep", "Count primes dividing some term, per decade");
  sw->add_option("--max", sweep_max, "Upper bound, e.g. 1e6")->required();
  sw->add_option("--threads", sweep_threads, "Worker threads (default ECHO_THREADS)");
  sw->add_option("--csv", sweep_csv, "Also write CSV to this path");
  sw->add_option("--checkpoint", sweep_ckpt, "Resume from / save progress to this file");
  sw->add_flag("--json", sweep_json, "JSON output");

  // group
  unsigned group_level = 2;
  auto* group = app.add_subcommand("group", "Affine group computations mod 2^k");
  group->require_subcommand(1);
  auto* gclass = group->add_subcommand("classify", "Kinetic subgroups up to conjugacy");
  gclass->add_option("--level", group_level)->required()->check(CLI::IsMember({2u, 3u}));
  auto* ghk = group->add_subcommand("hk", "Build H_k and check it is kinetic");
  ghk->add_option("--level", group_level)->required()->check(CLI::Range(2u, kMaxClosureLevel));

  // density
  bool dens_full = false, dens_json = false;
  unsigned dens_level = 2, dens_threads = 0;
  auto* dens = app.add_subcommand("density", "Density of v in the column space of M - I");
  dens->require_subcommand(1);
  auto* dan = dens->add_subcommand("analytic", "Exact limiting density");
  dan->add_flag("--full", dens_full, "Whole affine group instead of H");
  dan->add_flag("--json", dens_json, "JSON output");
  auto* dbr = dens->add_subcommand("brute", "Exact density at a finite level");
  dbr->add_option("--level", dens_level)->required()->check(CLI::Range(2u, 5u));
  dbr->add_flag("--full", dens_full, "Whole affine group instead of H");
  dbr->add_flag("--json", dens_json, "JSON output");
  dbr->add_option("--threads", dens_threads, "Worker threads");

  // family
  std::string fam_t, fam_a, fam_b, fam_sweep;
  bool fam_control = false, fam_json = false;
  unsigned fam_threads = 0;
  auto* fam = app.add_subcommand("family", "Fabulous quartic, certificate and empirical density");
  auto* opt_t = fam->add_option("--t", fam_t, "Family parameter");
  auto* opt_a = fam->add_option("--a", fam_a, "Explicit a (with --b)");
  auto* opt_b = fam->add_option("--b", fam_b, "Explicit b (with --a)");
  auto* opt_c = fam->add_flag("--control", fam_control, "Use the first control pair found by search");
  opt_t->excludes(opt_a)->excludes(opt_b)->excludes(opt_c);
  opt_a->needs(opt_b);
  opt_b->needs(opt_a);
  opt_c->excludes(opt_a);
  fam->add_option("--sweep", fam_sweep, "Sweep primes up to this bound");
  fam->add_option("--threads", fam_threads, "Worker threads");
  fam->add_flag("--json", fam_json, "JSON output");

  // verify
  unsigned verify_threads = 0;
  auto* ver = app.add_subcommand("verify", "Run every invariant suite");
  ver->add_option("--threads", verify_threads, "Worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  auto threads_or_default = [](unsigned t) { return t > 0 ? t : default_threads(); };

  try {
    if (*seq) {
      if (seq_to < seq_from) throw std::invalid_argument("--to must not be below --from");
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (long n = seq_from; n <= seq_to; ++n) {
        ExactInt v = seq_alt ? term_alt(n) : term(n);
        if (seq_json) {
          arr.push_back({{"n", n}, {"b_n", v.get_str()}});
        } else {
          out << n << ' ' << v.get_str() << '\n';
        }
      }
      if (seq_json) out << arr.dump(2) << '\n';
    } else if (*point) {
      OddMultiple om = odd_multiple_coords(point_n);
      RatPoint formula = om.point();
      RatPoint direct = scalar_mul(2 * point_n + 1, echo_point(), echo_curve());
      out << "sequence:  " << render(formula) << '\n';
      out << "group law: " << render(direct) << '\n';
      out << "b_n = " << om.denom_base.get_str() << '\n';
      if (!(formula == direct)) throw ContractViolation("odd multiple formula disagrees with the group law");
    } else if (*tate) {
      RatCurve c{parse_rational(ta1), parse_rational(ta2), parse_rational(ta3), parse_rational(ta4),
                 parse_rational(ta6)};
      RatPoint p = RatPoint::affine(parse_rational(tpx), parse_rational(tpy));
      TateForm tf = tate_normal_form(c, p);
      out << "a = " << to_fraction_string(tf.a) << '\n';
      out << "b = " << to_fraction_string(tf.b) << '\n';
      out << "[u,r,s,t] = [" << to_fraction_string(tf.map.u) << ", " << to_fraction_string(tf.map.r) << ", "
          << to_fraction_string(tf.map.s) << ", " << to_fraction_string(tf.map.t) << "]\n";
    } else if (*sw) {
      SweepOptions opts;
      opts.threads = threads_or_default(sweep_threads);
      if (!sweep_ckpt.empty()) opts.checkpoint_path = sweep_ckpt;
      auto records = sweep(parse_count(sweep_max, "--max"), opts);
      if (!sweep_csv.empty()) write_file(sweep_csv, to_csv(records));
      out << (sweep_json ? to_json(records) : to_csv(records));
    } else if (*gclass) {
      auto classes = classify_kinetic(group_level);
      out << "level " << group_level << ": " << classes.size() << " kinetic classes\n";
      SubgroupRep hk = build_hk(group_level);
      for (const auto& cls : classes) {
        const SubgroupRep& G = cls.representative;
        bool full = G.order() == agl_order(group_level);
        out << (full ? "full" : "proper") << " order " << G.order() << " conjugates " << cls.conjugates;
        if (!full) out << " conjugate_to_Hk " << (are_conjugate(G, hk) ? "yes" : "no");
        out << "\n  generators:";
        for (const auto& g : G.generators) out << ' ' << render(g);
        out << '\n';
      }
    } else if (*ghk) {
      SubgroupRep H = build_hk(group_level);
      bool kinetic = is_kinetic(H);
      out << "|H_" << group_level << "| = " << H.order() << '\n';
      out << "index " << agl_order(group_level) / H.order() << '\n';
      out << "kinetic " << (kinetic ? "yes" : "no") << '\n';
      if (!kinetic) throw ContractViolation("H_k is not kinetic");
    } else if (*dan || *dbr) {
      GroupKind kind = dens_full ? GroupKind::Full : GroupKind::Hk;
      DensityReport r = *dan ? analytic_density(kind) : brute_density(dens_level, kind, threads_or_default(dens_threads));
      if (dens_json) {
        out << to_json(r);
      } else {
        for (const auto& [label, v] : r.per_case) {
          out << label << ' ' << to_fraction_string(v) << " (" << r.case_matrices.at(label) << " classes)\n";
        }
        if (r.mode == "brute") out << "nonsingular_part " << to_fraction_string(r.nonsingular_part) << '\n';
        out << "total " << to_fraction_string(r.total) << '\n';
      }
    } else if (*fam) {
      std::optional<std::uint64_t> sx;
      if (!fam_sweep.empty()) sx = parse_count(fam_sweep, "--sweep");
      unsigned th = threads_or_default(fam_threads);
      FamilyReport r;
      if (!fam_t.empty()) {
        r = family_report(parse_rational(fam_t), sx, th);
      } else if (!fam_a.empty()) {
        r = pair_report(parse_rational(fam_a), parse_rational(fam_b), sx, th);
      } else if (fam_control) {
        auto pair = find_control_pair();
        if (!pair) throw ContractViolation("no control pair within the search bound");
        r = pair_report(pair->first, pair->second, sx, th);
      } else {
        throw std::invalid_argument("family needs --t, --a/--b or --control");
      }
      out << to_json(r);
    } else if (*ver) {
      bool ok = true;
      for (const SuiteResult& s : run_invariant_suites(threads_or_default(verify_threads))) {
        out << (s.passed ? "PASS " : "FAIL ") << s.name << ": " << s.detail << '\n';
        ok = ok && s.passed;
      }
      out << "isa " << kernels::isa_name(kernels::active_isa()) << '\n';
      if (!ok) return kExitContract;
    }
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitContract;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitContract;
  }
  return kExitOk;
}

}  // namespace echo
