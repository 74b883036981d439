#include "recurbound/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "recurbound/casestudies.hpp"
#include "recurbound/dfinite.hpp"
#include "recurbound/serialize.hpp"

namespace recurbound::cli {

namespace {

struct OutputOptions {
  std::string format = "both";
  std::string report_path;
};

struct EvalOptions {
  std::string op_path;
  std::string init;
  std::string point = "0";
  long order = 1;
  int precision = 53;
  bool force_zero = false;
  bool trace = false;
};

struct CaseOptions {
  std::string name;
  int precision = 53;
  std::optional<long> steps;
  std::string policy = "worst";
  std::uint64_t seed = 0;
  std::string a;
  int n = 0;
  std::string x = "7/10";
  std::string eps = "1/1048576";
  std::string c0 = "1";
  std::string u;
  int identity_order = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

ComplexRational parse_point(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return parse_rational(parts[0]);
  if (parts.size() == 2) return {parse_rational(parts[0]), parse_rational(parts[1])};
  throw std::invalid_argument("point must be \"re\" or \"re,im\"");
}

// "mid,rad;..." or "re,im,rad;..."
std::vector<Ball> parse_inits(const std::string& text, const FloatContext& ctx) {
  std::vector<Ball> balls;
  for (const auto& item : split(text, ';')) {
    if (item.empty()) continue;
    const auto parts = split(item, ',');
    ComplexRational mid;
    Rational rad;
    if (parts.size() == 2) {
      mid = parse_rational(parts[0]);
      rad = parse_rational(parts[1]);
    } else if (parts.size() == 3) {
      mid = {parse_rational(parts[0]), parse_rational(parts[1])};
      rad = parse_rational(parts[2]);
    } else {
      throw std::invalid_argument("initial value '" + item + "' must be \"mid,rad\" or \"re,im,rad\"");
    }
    if (sgn(rad) < 0) throw std::invalid_argument("initial radius must be nonnegative");
    balls.push_back(Ball::enclose(mid, ctx).with_added_radius(rad));
  }
  return balls;
}

void emit_json(const json& j, const OutputOptions& opts, std::ostream& out) {
  if (opts.format != "text") out << j.dump(2) << '\n';
  if (!opts.report_path.empty()) {
    std::ofstream f(opts.report_path);
    if (!f) throw std::runtime_error("cannot write report file " + opts.report_path);
    f << j.dump(2) << '\n';
  }
}

int run_eval(const EvalOptions& o, const OutputOptions& opts, std::ostream& out) {
  const FloatContext ctx(o.precision);
  const DiffOperator op = load_operator_file(o.op_path);
  const std::vector<Ball> inits = parse_inits(o.init, ctx);
  DfsumOptions dopts;
  dopts.force_zero_midpoints = o.force_zero;
  dopts.keep_trace = o.trace;
  const DfsumResult res = evaluate(op, inits, parse_point(o.point), o.order, ctx, dopts);

  if (opts.format != "json") {
    const Ball& b = res.enclosure;
    out << "enclosure: " << to_decimal(b.mid().re.to_rational()) << " + " << to_decimal(b.mid().im.to_rational())
        << "i +/- " << to_decimal(b.rad(), 6) << '\n';
    out << "eta_bar: " << to_decimal(res.eta_bar, 6) << "  Delta_N: " << to_decimal(res.Delta_N, 6)
        << "  partial-sum radius: " << to_decimal(res.partial_sum_rad, 6) << '\n';
  }
  json j = to_json(res, o.trace);
  j["precision"] = o.precision;
  j["order"] = o.order;
  emit_json(j, opts, out);
  return kExitOk;
}

void print_report_text(const SimulationReport& rep, std::ostream& out) {
  out << "case " << rep.name << '\n';
  for (const auto& [key, value] : rep.parameters) {
    out << "  " << key << " = "
        << (std::holds_alternative<Rational>(value) ? to_decimal(std::get<Rational>(value), 10)
                                                     : std::get<std::string>(value))
        << '\n';
  }
  out << std::left << std::setw(14) << "  index" << std::setw(18) << "error" << std::setw(18) << "bound"
      << "ratio\n";
  const std::size_t count = rep.records.size();
  const std::size_t stride = std::max<std::size_t>(1, count / 10);
  for (std::size_t i = 0; i < count; ++i) {
    if (i % stride != 0 && i + 1 != count) continue;
    const auto& r = rep.records[i];
    std::string idx;
    for (long v : r.index) idx += (idx.empty() ? "" : ",") + std::to_string(v);
    const auto q = r.ratio();
    out << "  " << std::setw(12) << idx << std::setw(18) << to_decimal(r.error(), 6) << std::setw(18)
        << to_decimal(r.bound, 6) << (q ? to_decimal(*q, 4) : std::string("-")) << (r.ok() ? "" : "  VIOLATION")
        << '\n';
  }
  out << "  max ratio: " << to_decimal(rep.max_ratio(), 6) << '\n';
  for (const auto& c : rep.checks)
    out << "  [" << (c.passed ? "ok" : "FAILED") << "] " << c.name << (c.detail.empty() ? "" : ": " + c.detail)
        << '\n';
  out << (rep.passed() ? "all bounds hold\n" : "BOUND VIOLATED\n");
}

Rational rational_or(const std::string& text, const Rational& fallback) {
  return text.empty() ? fallback : parse_rational(text);
}

SimulationReport run_case_study(const CaseOptions& o) {
  const FloatContext ctx(o.precision);
  const auto steps = [&](long d) { return o.steps.value_or(d); };
  if (o.name == "toy-fixed")
    return toy_fixed_run(parse_rational(o.c0), rational_or(o.u, Rational(1, 1 << 24)), steps(100),
                         parse_policy(o.policy), o.seed);
  if (o.name == "toy-float") {
    const Rational c0 = parse_rational(o.c0);
    const BinFloat c0f = round_nearest(c0, ctx);
    if (c0f.to_rational() != c0) throw std::invalid_argument("c0 must be representable at the working precision");
    return toy_float_run(c0f, ctx, steps(1000));
  }
  if (o.name == "toy-tight")
    return toy_float_tightness(parse_rational(o.c0), rational_or(o.u, Rational(1, 1024)), steps(50));
  if (o.name == "legendre")
    return legendre_run(parse_rational(o.x), parse_rational(o.eps), steps(1000), parse_policy(o.policy), o.seed);
  if (o.name == "bernoulli") return bernoulli_run(ctx, steps(100));
  if (o.name == "wave") {
    const int n = o.n > 0 ? o.n : 32;
    WaveOptions wopts;
    wopts.identity_order = o.identity_order;
    return wave_run(n, rational_or(o.a, Rational(1)), wave_sine_init(n, ctx), ctx, static_cast<int>(steps(512)),
                    wopts);
  }
  if (o.name == "wave-lambda")
    return wave_lambda_report(o.n > 0 ? o.n : 4, rational_or(o.a, Rational(1, 2)), static_cast<int>(steps(64)));
  throw std::invalid_argument("unknown case '" + o.name + "'");
}

int run_case(const CaseOptions& o, const OutputOptions& opts, std::ostream& out) {
  const SimulationReport rep = run_case_study(o);
  if (opts.format != "json") print_report_text(rep, out);
  emit_json(to_json(rep), opts, out);
  return rep.passed() ? kExitOk : kExitBoundViolated;
}

int run_rec(const std::string& op_path, const OutputOptions& opts, std::ostream& out) {
  const RecOperator rec = to_recurrence(load_operator_file(op_path));
  if (opts.format != "json") {
    for (int i = 0; i <= rec.order(); ++i) {
      out << "b_" << i << "(n) =";
      const Poly& p = rec.b[static_cast<std::size_t>(i)];
      if (p.empty()) out << " 0";
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k].is_zero()) continue;
        out << " + (" << p[k] << ")";
        if (k > 0) out << " n^" << k;
      }
      out << '\n';
    }
  }
  emit_json(to_json(rec), opts, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified evaluation of linear recurrences and their error bounds", "recur-bound"};
  app.require_subcommand(1);
  OutputOptions output;
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", output.format, "json, text or both")
        ->check(CLI::IsMember({"json", "text", "both"}));
    sub->add_option("--report", output.report_path, "also write the JSON report to this file");
  };

  EvalOptions eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "enclose a partial sum of a power-series solution");
  eval_cmd->add_option("--op", eval.op_path, "operator file (JSON)")->required();
  eval_cmd->add_option("--init", eval.init, "initial values \"mid,rad;...\" or \"re,im,rad;...\"")->required();
  eval_cmd->add_option("--point", eval.point, "evaluation point \"re,im\"");
  eval_cmd->add_option("--order", eval.order, "number of terms N")->required()->check(CLI::PositiveNumber);
  eval_cmd->add_option("--prec", eval.precision, "working precision in bits")->check(CLI::Range(3, 1 << 20));
  eval_cmd->add_flag("--force-zero-midpoints", eval.force_zero, "recentre coefficient balls that contain zero");
  eval_cmd->add_flag("--trace", eval.trace, "include the per-step local error trace");
  add_output(eval_cmd);

  std::string rec_path;
  CLI::App* rec_cmd = app.add_subcommand("rec", "print the recurrence associated with an operator");
  rec_cmd->add_option("--op", rec_path, "operator file (JSON)")->required();
  add_output(rec_cmd);

  CaseOptions cs;
  CLI::App* case_cmd = app.add_subcommand("case", "run a worked example against its error bound");
  case_cmd->add_option("name", cs.name, "toy-fixed, toy-float, toy-tight, legendre, bernoulli, wave, wave-lambda")
      ->required()
      ->check(CLI::IsMember({"toy-fixed", "toy-float", "toy-tight", "legendre", "bernoulli", "wave", "wave-lambda"}));
  case_cmd->add_option("--prec", cs.precision, "working precision in bits")->check(CLI::Range(3, 1 << 20));
  case_cmd->add_option("--steps", cs.steps, "number of indices / time levels")->check(CLI::PositiveNumber);
  case_cmd->add_option("--policy", cs.policy, "worst, random or adversarial");
  case_cmd->add_option("--seed", cs.seed, "seed for the random policy");
  case_cmd->add_option("--a", cs.a, "wave parameter a in (0, 1]");
  case_cmd->add_option("--n", cs.n, "wave grid size")->check(CLI::Range(2, 1 << 16));
  case_cmd->add_option("--x", cs.x, "Legendre evaluation point");
  case_cmd->add_option("--eps", cs.eps, "absolute error bound per step");
  case_cmd->add_option("--c0", cs.c0, "initial value of the toy recurrence");
  case_cmd->add_option("--u", cs.u, "error unit for the toy recurrences");
  case_cmd->add_option("--identity-order", cs.identity_order, "wave: cross-check Delta = lambda eta to this order")
      ->check(CLI::NonNegativeNumber);
  add_output(case_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(eval, output, out);
    if (rec_cmd->parsed()) return run_rec(rec_path, output, out);
    return run_case(cs, output, out);
  } catch (const PrecisionFailure& e) {
    err << "precision failure: " << e.what() << '\n';
  } catch (const CertificationFailure& e) {
    err << "inadmissible evaluation point: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace recurbound::cli
