#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "constellation/error.hpp"
#include "constellation/latin.hpp"
#include "json.hpp"
#include "latin_internal.hpp"

namespace constellation {

namespace {

using nlohmann::json;

struct Checkpoint {
  std::uint64_t next_index = 0;
  std::uint64_t mates_found = 0;
  std::uint64_t transversals_total = 0;
  std::uint64_t digest = kDigestSeed;
  double elapsed = 0.0;
  std::map<std::uint64_t, std::uint64_t> histogram;
};

json to_json(int order, const Checkpoint& cp) {
  json hist = json::object();
  for (const auto& [k, v] : cp.histogram) hist[std::to_string(k)] = v;
  return json{{"order", order},
              {"next_index", cp.next_index},
              {"mates_found", cp.mates_found},
              {"transversals_total", cp.transversals_total},
              {"digest", cp.digest},
              {"elapsed_seconds", cp.elapsed},
              {"transversal_histogram", hist}};
}

void write_checkpoint(const std::string& path, int order, const Checkpoint& cp) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << to_json(order, cp).dump(2) << '\n';
    if (!out) throw Error(ErrorCode::BadDocument, "cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

bool read_checkpoint(const std::string& path, int order, Checkpoint& cp) {
  std::ifstream in(path);
  if (!in) return false;
  json j;
  try {
    j = json::parse(in);
    if (j.at("order").get<int>() != order) {
      throw Error(ErrorCode::CheckpointMismatch, "checkpoint is for order " + j.at("order").dump());
    }
    cp.next_index = j.at("next_index").get<std::uint64_t>();
    cp.mates_found = j.at("mates_found").get<std::uint64_t>();
    cp.transversals_total = j.at("transversals_total").get<std::uint64_t>();
    cp.digest = j.at("digest").get<std::uint64_t>();
    cp.elapsed = j.at("elapsed_seconds").get<double>();
    for (const auto& [k, v] : j.at("transversal_histogram").items()) {
      cp.histogram[std::stoull(k)] = v.get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadDocument, std::string("checkpoint: ") + e.what());
  }
  return true;
}

struct ItemResult {
  bool has_mate = false;
  std::uint64_t transversals = 0;
};

// Fans a batch out to `workers` threads; results land at their batch slot.
void run_batch(const std::vector<LatinSquare>& batch, std::vector<ItemResult>& results, int workers) {
  results.assign(batch.size(), {});
  auto work = [&](std::atomic<std::size_t>& next) {
    for (std::size_t i = next++; i < batch.size(); i = next++) {
      const auto outcome = detail::mate_search(batch[i]);
      results[i] = {outcome.mate.has_value(), outcome.transversal_count};
    }
  };
  std::atomic<std::size_t> next{0};
  if (workers <= 1) {
    work(next);
    return;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back([&] { work(next); });
}

}  // namespace

MateCertificate certify_mates(int n, const CertifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Checkpoint cp;
  if (!options.checkpoint.empty()) read_checkpoint(options.checkpoint, n, cp);
  const std::uint64_t resume_from = cp.next_index;
  const std::uint64_t batch_size = std::max<std::uint64_t>(1, options.batch);
  const int workers = std::max(1, options.workers);

  std::vector<LatinSquare> batch;
  std::vector<ItemResult> results;
  std::uint64_t examined_this_run = 0;

  auto flush = [&] {
    if (batch.empty()) return;
    run_batch(batch, results, workers);
    for (const auto& r : results) {
      if (r.has_mate) ++cp.mates_found;
      ++cp.histogram[r.transversals];
      cp.transversals_total += r.transversals;
    }
    cp.next_index += batch.size();
    batch.clear();
    if (!options.checkpoint.empty()) {
      Checkpoint snapshot = cp;
      snapshot.elapsed += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      write_checkpoint(options.checkpoint, n, snapshot);
    }
  };

  bool complete = true;
  enumerate_reduced_latin(n, [&](std::uint64_t index, const LatinSquare& square) {
    if (index < resume_from) return true;
    if (options.limit && examined_this_run >= options.limit) {
      complete = false;
      return false;
    }
    cp.digest = digest_square(cp.digest, square);
    batch.push_back(square);
    ++examined_this_run;
    if (batch.size() >= batch_size) flush();
    return true;
  });
  flush();

  MateCertificate cert;
  cert.order = n;
  cert.squares_examined = cp.next_index;
  cert.mates_found = cp.mates_found;
  cert.transversal_histogram = cp.histogram;
  cert.transversals_total = cp.transversals_total;
  cert.digest = cp.digest;
  cert.complete = complete;
  cert.elapsed_seconds =
      cp.elapsed + std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cert;
}

}  // namespace constellation
