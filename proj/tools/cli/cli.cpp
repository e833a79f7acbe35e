#include "cli.hpp"

#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "constellation/affine.hpp"
#include "constellation/error.hpp"
#include "constellation/latin.hpp"
#include "constellation/mub.hpp"
#include "constellation/search.hpp"
#include "io.hpp"

namespace constellation::cli {

namespace {

using nlohmann::json;

constexpr const char* kWorkersEnv = "CONSTELLATION_KIT_WORKERS";

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

// Domain failures that mean "the object does not have the property asked about".
bool is_negative_result(ErrorCode code) {
  return code == ErrorCode::NotEnoughFoliations || code == ErrorCode::ConditionBViolated;
}

std::string verification_text(const VerificationReport& r, const std::string& label) {
  std::ostringstream os;
  os << (r.valid ? "valid " : "invalid ") << label << "\n";
  const std::size_t shown = std::min<std::size_t>(r.violations.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) os << "  " << r.violations[i].describe() << "\n";
  if (r.violations.size() > shown) os << "  ... " << r.violations.size() - shown << " more\n";
  return os.str();
}

struct Options {
  // shared
  bool json = false;
  std::string in;
  std::string out;
  int workers = 1;
  // plane / mols
  int order = 0;
  std::string method = "primepower";
  // verify
  bool plane_axioms = false;
  // certify
  std::string checkpoint;
  int certify_order = 6;
  // table1
  bool verify = false;
  // mub
  std::string kind;
  int dim = 0;
  double a = 0.0;
  double b = 0.0;
  double tol = kVerificationTolerance;
  std::string signature;
  int restarts = 0;
  std::uint64_t seed = 0;
  int max_iterations = 10000;
  double grad_tol = 1e-9;
  double threshold = 1e-8;
  int vectors = 0;
  bool orthonormal = false;
};

CommandOutcome with_payload(int code, std::string report, json payload, const Options& o) {
  CommandOutcome out;
  out.exit_code = code;
  out.report = std::move(report);
  out.payload = std::move(payload);
  out.emit_json = o.json;
  if (!o.out.empty()) io::write_file(o.out, out.payload_text());
  return out;
}

CommandOutcome cmd_plane(const Options& o) {
  const auto plane = make_plane(o.order);
  const auto mat = plane.materialized();
  std::size_t lines = 0;
  for (const auto& c : mat) lines += c.size();
  std::ostringstream os;
  os << "affine plane of order " << o.order << ": " << lines << " lines in " << mat.size() << " foliations, "
     << signature(plane).compact() << "\n";
  return with_payload(0, os.str(), io::constellation_to_json(plane), o);
}

CommandOutcome cmd_verify(const Options& o) {
  const auto c = io::constellation_from_json(io::read_json_file(o.in));
  const auto sig = signature(c);
  auto report = verify_constellation(c);
  std::string text = verification_text(report, sig.expanded());
  json payload{{"signature", sig.sizes()}, {"order", c.order()}, {"constellation", io::report_to_json(report)}};
  bool ok = report.valid;
  if (o.plane_axioms) {
    const auto axioms = verify_plane_axioms(c);
    text += verification_text(axioms, "affine plane axioms");
    payload["plane_axioms"] = io::report_to_json(axioms);
    ok = ok && axioms.valid;
  }
  return with_payload(ok ? 0 : 1, text, payload, o);
}

CommandOutcome cmd_complete(const Options& o) {
  const auto c = io::constellation_from_json(io::read_json_file(o.in));
  const auto extra = complete_foliation_set(c);
  const auto completed = with_class(c, extra);
  const auto axioms = verify_plane_axioms(completed);
  std::ostringstream os;
  os << "completed " << signature(c).compact() << " to " << signature(completed).compact()
     << (axioms.valid ? " (affine plane)" : " (plane axioms fail)") << "\n";
  return with_payload(axioms.valid ? 0 : 1, os.str(), io::constellation_to_json(completed), o);
}

std::string render_square(const LatinSquare& s) {
  std::string out;
  for (int r = 0; r < s.order(); ++r) {
    for (int c = 0; c < s.order(); ++c) {
      if (c) out += ' ';
      out += static_cast<char>('1' + s.at(r, c));
    }
    out += '\n';
  }
  return out;
}

CommandOutcome cmd_mols(const Options& o) {
  std::vector<LatinSquare> squares;
  if (o.method == "primepower") {
    squares = mols_prime_power(o.order);
  } else {
    squares = macneish_mols(o.order);
  }
  bool pairwise = true;
  for (std::size_t i = 0; i < squares.size(); ++i)
    for (std::size_t j = i + 1; j < squares.size(); ++j) pairwise = pairwise && *validate_squares(squares[i], squares[j]).orthogonal;
  std::ostringstream os;
  os << squares.size() << " mutually orthogonal Latin square(s) of order " << o.order << " (" << o.method << ")"
     << (pairwise ? "" : " NOT pairwise orthogonal") << "\n";
  if (o.order <= 9) {
    for (const auto& s : squares) os << "\n" << render_square(s);
  }
  json payload{{"order", o.order}, {"method", o.method}, {"pairwise_orthogonal", pairwise},
               {"squares", io::squares_to_json(squares)}};
  return with_payload(pairwise ? 0 : 1, os.str(), payload, o);
}

CommandOutcome cmd_mate(const Options& o) {
  const auto square = parse_latin_text(io::read_file(o.in));
  const auto mate = find_orthogonal_mate(square);
  json payload{{"order", square.order()}, {"mate_found", mate.has_value()}};
  if (!mate) return with_payload(1, "no orthogonal mate exists\n", payload, o);
  payload["mate"] = io::squares_to_json({*mate})[0];
  return with_payload(0, "orthogonal mate found:\n" + render_graeco_latin(square, *mate), payload, o);
}

CommandOutcome cmd_certify(const Options& o) {
  CertifyOptions opts;
  opts.workers = o.workers;
  opts.checkpoint = o.checkpoint;
  const auto cert = certify_mates(o.certify_order, opts);
  std::ostringstream os;
  os << "order " << cert.order << ": examined " << cert.squares_examined << " reduced Latin squares, "
     << cert.mates_found << " with an orthogonal mate\n";
  os << "transversals: " << cert.transversals_total << " total; digest " << std::hex << std::setw(16)
     << std::setfill('0') << cert.digest << std::dec << "; " << std::fixed << std::setprecision(2)
     << cert.elapsed_seconds << " s\n";
  if (cert.asserts_nonexistence()) {
    os << "no pair of orthogonal Latin squares of order " << cert.order << " exists\n";
  }
  return with_payload(cert.asserts_nonexistence() ? 0 : 1, os.str(), io::certificate_to_json(cert), o);
}

CommandOutcome cmd_table1(const Options& o) {
  const auto c = table1_constellation();
  const auto sig = signature(c);
  std::string text = table1_text();
  int code = 0;
  if (o.verify) {
    const auto report = verify_constellation(c);
    text = verification_text(report, sig.expanded() + " (" + sig.compact() + ")");
    code = report.valid ? 0 : 1;
  } else {
    text += sig.compact() + "\n";
  }
  return with_payload(code, text, io::constellation_to_json(c), o);
}

CommandOutcome cmd_mub_make(const Options& o) {
  MUConstellation c(1, {});
  if (o.kind == "standard") {
    c = MUConstellation(o.dim, {standard_basis(o.dim)});
  } else if (o.kind == "fourier") {
    c = MUConstellation(o.dim, {fourier_basis(o.dim)});
  } else if (o.kind == "fourier-family" || o.kind == "tao") {
    if (o.dim != 6) throw Error(ErrorCode::DimensionMismatch, "--kind " + o.kind + " requires --dim 6");
    c = MUConstellation(6, {o.kind == "tao" ? tao_basis() : fourier_family6(o.a, o.b)});
  } else if (o.kind == "hw-triple") {
    c = hw_triple(o.dim);
  } else {
    c = wf_complete_set(o.dim);
  }
  std::ostringstream os;
  os << o.kind << " in dimension " << o.dim << ": " << c.bases().size() << " basis/bases";
  if (c.bases().size() > 1) os << ", total defect " << sci(constellation_defect(c).total);
  os << "\n";
  return with_payload(0, os.str(), io::basis_set_to_json(c), o);
}

CommandOutcome cmd_mub_defect(const Options& o) {
  const auto c = io::basis_set_from_json(io::read_json_file(o.in));
  const auto report = constellation_defect(c);
  std::ostringstream os;
  for (std::size_t i = 0; i < report.orthonormality_residuals.size(); ++i)
    os << "basis " << i << ": orthonormality residual " << sci(report.orthonormality_residuals[i]) << "\n";
  for (const auto& p : report.pair_defects)
    os << "bases " << p.first << "," << p.second << ": defect " << sci(p.defect) << "\n";
  const bool mu = report.total < o.tol && report.max_residual() < o.tol;
  os << "total " << sci(report.total) << (mu ? " (mutually unbiased)" : " (not mutually unbiased)") << "\n";
  return with_payload(mu ? 0 : 1, os.str(), io::defect_to_json(report), o);
}

SearchConfig search_config(const Options& o) {
  SearchConfig cfg;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.max_iterations = o.max_iterations;
  cfg.grad_tol = o.grad_tol;
  cfg.success_threshold = o.threshold;
  cfg.workers = o.workers;
  return cfg;
}

std::string search_text(const std::string& target, const SearchResult& r, const SearchConfig& cfg) {
  std::ostringstream os;
  os << target << ": " << (r.status == SearchStatus::Found ? "Found" : "NotFound") << ", best defect "
     << sci(r.best_defect);
  if (r.found_at_restart) {
    os << " at restart " << *r.found_at_restart;
  } else {
    os << " after " << r.restarts_run << " restarts (seed " << cfg.seed << ", max " << cfg.max_iterations
       << " iterations each): budgeted numerical evidence, not a proof";
  }
  os << "\n";
  return os.str();
}

CommandOutcome cmd_mub_search(const Options& o) {
  const auto sizes = parse_size_list(o.signature);
  const auto cfg = search_config(o);
  const auto result = search_constellation(sizes, o.dim, cfg);
  auto payload = io::search_result_to_json(result, cfg);
  payload["signature"] = sizes;
  payload["dim"] = o.dim;
  const Signature sig(o.dim, sizes);
  std::string label = sig.expanded(true);
  if (sig.compact(true) != label) label += " (" + sig.compact(true) + ")";
  return with_payload(result.status == SearchStatus::Found ? 0 : 1, search_text(label, result, cfg), payload, o);
}

CommandOutcome cmd_mub_extend(const Options& o) {
  const auto fixed = io::basis_set_from_json(io::read_json_file(o.in));
  const auto cfg = search_config(o);
  const auto result = extend_search(fixed.bases(), o.vectors, o.orthonormal, cfg);
  auto payload = io::search_result_to_json(result, cfg);
  payload["vectors"] = o.vectors;
  payload["orthonormal"] = o.orthonormal;
  std::ostringstream label;
  label << "extension of " << fixed.bases().size() << " fixed basis/bases by " << o.vectors
        << (o.orthonormal ? " orthonormal" : "") << " vector(s)";
  return with_payload(result.status == SearchStatus::Found ? 0 : 1, search_text(label.str(), result, cfg), payload, o);
}

}  // namespace

CommandOutcome run_command(const std::vector<std::string>& args) {
  CLI::App app{"Affine and mutually unbiased constellations", "constellation-kit"};
  app.require_subcommand(1);
  Options o;

  auto* plane = app.add_subcommand("plane", "affine plane of a prime-power order");
  plane->add_option("--order", o.order, "plane order q")->required();
  plane->add_flag("--json", o.json, "emit JSON");
  plane->add_option("--out", o.out, "write JSON here");

  auto* verify = app.add_subcommand("verify", "check conditions (a) and (b) of a constellation file");
  verify->add_option("--in", o.in, "constellation JSON")->required();
  verify->add_flag("--plane-axioms", o.plane_axioms, "also check the affine plane axioms");
  verify->add_flag("--json", o.json, "emit JSON");

  auto* complete = app.add_subcommand("complete", "append the foliation implied by d foliations");
  complete->add_option("--in", o.in, "constellation JSON")->required();
  complete->add_flag("--json", o.json, "emit JSON");
  complete->add_option("--out", o.out, "write JSON here");

  auto* mols = app.add_subcommand("mols", "mutually orthogonal Latin squares");
  mols->add_option("--order", o.order, "square order")->required();
  mols->add_option("--method", o.method, "primepower or macneish")->check(CLI::IsMember({"primepower", "macneish"}));
  mols->add_flag("--json", o.json, "emit JSON");

  auto* mate = app.add_subcommand("mate", "find an orthogonal mate of a Latin square");
  mate->add_option("--in", o.in, "Latin square text")->required();
  mate->add_flag("--json", o.json, "emit JSON");

  auto* certify = app.add_subcommand("certify-no-mols6", "exhaustive mate search over reduced Latin squares");
  certify->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber)->envname(kWorkersEnv);
  certify->add_option("--checkpoint", o.checkpoint, "checkpoint file (resumes if present)");
  certify->add_option("--order", o.certify_order, "square order (control runs)")->check(CLI::Range(2, 7));
  certify->add_flag("--json", o.json, "emit JSON");

  auto* table1 = app.add_subcommand("table1", "the maximal order-6 affine constellation");
  table1->add_flag("--verify", o.verify, "check conditions (a) and (b)");
  table1->add_flag("--json", o.json, "emit JSON");

  auto* mub = app.add_subcommand("mub", "mutually unbiased bases");
  mub->require_subcommand(1);
  auto* make = mub->add_subcommand("make", "construct known bases");
  make->add_option("--kind", o.kind, "basis family")
      ->required()
      ->check(CLI::IsMember({"standard", "fourier", "fourier-family", "tao", "hw-triple", "wf"}));
  make->add_option("--dim", o.dim, "dimension")->required();
  make->add_option("--a", o.a, "Fourier family parameter a (turns)");
  make->add_option("--b", o.b, "Fourier family parameter b (turns)");
  make->add_flag("--json", o.json, "emit JSON");
  make->add_option("--out", o.out, "write JSON here");

  auto* defect = mub->add_subcommand("defect", "defect of a basis set");
  defect->add_option("--in", o.in, "basis-set JSON")->required();
  defect->add_option("--tol", o.tol, "tolerance for reporting mutual unbiasedness");
  defect->add_flag("--json", o.json, "emit JSON");

  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--restarts", o.restarts, "random restarts")->required()->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "random seed")->required();
    sub->add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber)->envname(kWorkersEnv);
    sub->add_option("--max-iterations", o.max_iterations, "iterations per restart")->check(CLI::PositiveNumber);
    sub->add_option("--grad-tol", o.grad_tol, "gradient-norm convergence threshold")->check(CLI::PositiveNumber);
    sub->add_option("--threshold", o.threshold, "defect declaring success")->check(CLI::PositiveNumber);
    sub->add_flag("--json", o.json, "emit JSON");
    sub->add_option("--out", o.out, "write JSON here");
  };
  auto* search = mub->add_subcommand("search", "numerical search for an MU constellation");
  search->add_option("--dim", o.dim, "dimension")->required();
  search->add_option("--signature", o.signature, "set sizes, e.g. 5,5,3,1")->required();
  add_budget(search);

  auto* extend = mub->add_subcommand("extend", "numerical search for MU vectors extending fixed bases");
  extend->add_option("--in", o.in, "basis-set JSON")->required();
  extend->add_option("--vectors", o.vectors, "number of vectors")->required();
  extend->add_flag("--orthonormal", o.orthonormal, "vectors mutually orthonormal");
  add_budget(extend);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {0, app.help(), std::nullopt, false};
  } catch (const CLI::ParseError& e) {
    return {2, std::string("usage error: ") + e.what() + "\n", std::nullopt, false};
  }

  try {
    if (plane->parsed()) return cmd_plane(o);
    if (verify->parsed()) return cmd_verify(o);
    if (complete->parsed()) return cmd_complete(o);
    if (mols->parsed()) return cmd_mols(o);
    if (mate->parsed()) return cmd_mate(o);
    if (certify->parsed()) return cmd_certify(o);
    if (table1->parsed()) return cmd_table1(o);
    if (make->parsed()) return cmd_mub_make(o);
    if (defect->parsed()) return cmd_mub_defect(o);
    if (search->parsed()) return cmd_mub_search(o);
    if (extend->parsed()) return cmd_mub_extend(o);
  } catch (const Error& e) {
    return {is_negative_result(e.code()) ? 1 : 2, std::string("error: ") + e.what() + "\n", std::nullopt, false};
  } catch (const std::exception& e) {
    return {2, std::string("error: ") + e.what() + "\n", std::nullopt, false};
  }
  return {2, "usage error: no command\n", std::nullopt, false};
}

}  // namespace constellation::cli
