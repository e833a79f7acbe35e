#include "io.hpp"

#include <fstream>
#include <sstream>

#include "constellation/error.hpp"

namespace constellation::io {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadDocument, std::string(what) + ": " + e.what());
  }
}

}  // namespace

json constellation_to_json(const AffineConstellation& c) {
  json classes = json::array();
  for (const auto& cls : c.classes()) {
    json lines = json::array();
    for (const Line& l : cls.lines()) lines.push_back(l.points());
    classes.push_back(std::move(lines));
  }
  return json{{"order", c.order()}, {"classes", std::move(classes)}};
}

AffineConstellation constellation_from_json(const json& j) {
  return guarded("constellation", [&] {
    const int d = j.at("order").get<int>();
    std::vector<std::vector<Line>> classes;
    for (const auto& cls : j.at("classes")) {
      std::vector<Line> lines;
      for (const auto& pts : cls) lines.emplace_back(d, pts.get<std::vector<int>>());
      classes.push_back(std::move(lines));
    }
    return AffineConstellation(d, std::move(classes));
  });
}

json basis_set_to_json(const MUConstellation& c) {
  json bases = json::array();
  for (const Basis& b : c.bases()) {
    json cols = json::array();
    for (int k = 0; k < b.size(); ++k) {
      json col = json::array();
      for (int r = 0; r < b.dim(); ++r) {
        const Complex z = b.columns()(r, k);
        col.push_back(json::array({z.real(), z.imag()}));
      }
      cols.push_back(std::move(col));
    }
    bases.push_back(std::move(cols));
  }
  return json{{"dim", c.dim()}, {"bases", std::move(bases)}};
}

MUConstellation basis_set_from_json(const json& j) {
  return guarded("basis set", [&] {
    const int d = j.at("dim").get<int>();
    if (d < 1) throw Error(ErrorCode::BadDocument, "dim must be positive");
    std::vector<Basis> bases;
    for (const auto& cols : j.at("bases")) {
      CMatrix m(d, static_cast<Eigen::Index>(cols.size()));
      for (std::size_t k = 0; k < cols.size(); ++k) {
        const auto& col = cols[k];
        if (col.size() != static_cast<std::size_t>(d)) {
          throw Error(ErrorCode::DimensionMismatch, "column length differs from dim");
        }
        for (int r = 0; r < d; ++r) {
          const auto& z = col[static_cast<std::size_t>(r)];
          if (z.size() != 2) throw Error(ErrorCode::BadDocument, "complex entries are [re, im] pairs");
          m(r, static_cast<Eigen::Index>(k)) = Complex(z[0].get<double>(), z[1].get<double>());
        }
      }
      bases.emplace_back(std::move(m));
    }
    return MUConstellation(d, std::move(bases));
  });
}

json report_to_json(const VerificationReport& r) {
  json violations = json::array();
  for (const Violation& v : r.violations) violations.push_back(v.describe());
  return json{{"valid", r.valid}, {"violations", std::move(violations)}};
}

json defect_to_json(const DefectReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pair_defects) {
    pairs.push_back(json{{"first", p.first}, {"second", p.second}, {"defect", p.defect}});
  }
  return json{{"pair_defects", std::move(pairs)},
              {"orthonormality_residuals", r.orthonormality_residuals},
              {"total", r.total}};
}

json certificate_to_json(const MateCertificate& c) {
  json hist = json::object();
  for (const auto& [k, v] : c.transversal_histogram) hist[std::to_string(k)] = v;
  return json{{"order", c.order},
              {"squares_examined", c.squares_examined},
              {"mates_found", c.mates_found},
              {"complete", c.complete},
              {"asserts_nonexistence", c.asserts_nonexistence()},
              {"transversals_total", c.transversals_total},
              {"transversal_histogram", std::move(hist)},
              {"digest", c.digest}};
}

json squares_to_json(const std::vector<LatinSquare>& squares) {
  json out = json::array();
  for (const auto& s : squares) {
    json rows = json::array();
    for (int r = 0; r < s.order(); ++r) {
      std::vector<int> row(s.grid().begin() + r * s.order(), s.grid().begin() + (r + 1) * s.order());
      rows.push_back(row);
    }
    out.push_back(std::move(rows));
  }
  return out;
}

json search_result_to_json(const SearchResult& r, const SearchConfig& cfg) {
  json out{{"status", r.status == SearchStatus::Found ? "Found" : "NotFound"},
           {"best_defect", r.best_defect},
           {"seed", cfg.seed},
           {"budget",
            {{"restarts", cfg.restarts},
             {"max_iterations", cfg.max_iterations},
             {"grad_tol", cfg.grad_tol},
             {"success_threshold", cfg.success_threshold}}},
           {"restarts_run", r.restarts_run},
           {"best_restart", r.best_restart},
           {"iterations_used", r.iterations_used},
           {"configuration", basis_set_to_json(r.best_configuration)}};
  out["found_at_restart"] = r.found_at_restart ? json(*r.found_at_restart) : json(nullptr);
  if (r.status == SearchStatus::NotFound) {
    out["evidence"] = "budgeted numerical evidence, not a proof of non-existence";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadDocument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::BadDocument, "cannot write " + path);
}

json read_json_file(const std::string& path) {
  const std::string text = read_file(path);
  return guarded(path.c_str(), [&] { return json::parse(text); });
}

}  // namespace constellation::io
