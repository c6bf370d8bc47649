#include "cfevrp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "cfevrp/decode.hpp"
#include "cfevrp/encoder.hpp"
#include "cfevrp/json_io.hpp"
#include "cfevrp/smtlib.hpp"
#include "json.hpp"

namespace cfevrp {

namespace {

std::string format_seconds(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << s;
  return out.str();
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

std::string bench_csv_header() {
  return "instance,cell,status,gt_s,st_s,cost,timeout";
}

std::string bench_record_to_csv(const BenchRecord& r) {
  std::ostringstream out;
  out << r.instance << ',' << r.cell << ',' << r.status << ','
      << format_seconds(r.gt_s) << ',' << format_seconds(r.st_s) << ','
      << (r.status == "sat" ? std::to_string(r.cost) : std::string()) << ','
      << (r.timeout ? '1' : '0');
  return out.str();
}

std::optional<BenchRecord> bench_record_from_csv(const std::string& line) {
  if (line.empty()) return std::nullopt;
  std::vector<std::string> f = split_csv_line(line);
  if (!f.empty() && f[0] == "instance") return std::nullopt;  // header
  if (f.size() != 7) {
    throw std::runtime_error("malformed results row: " + line);
  }
  BenchRecord r;
  r.instance = f[0];
  r.cell = f[1];
  r.status = f[2];
  r.gt_s = std::stod(f[3]);
  r.st_s = std::stod(f[4]);
  r.cost = f[5].empty() ? -1 : std::stoll(f[5]);
  r.timeout = f[6] == "1";
  return r;
}

std::vector<BenchRecord> load_bench_csv(const std::string& path) {
  std::vector<BenchRecord> records;
  std::ifstream in(path);
  if (!in) return records;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto r = bench_record_from_csv(line)) records.push_back(*r);
  }
  return records;
}

void append_bench_record(const std::string& path, const BenchRecord& record) {
  bool need_header = true;
  {
    std::ifstream in(path);
    std::string first;
    if (in && std::getline(in, first) && !first.empty()) need_header = false;
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write results file " + path);
  if (need_header) out << bench_csv_header() << "\n";
  out << bench_record_to_csv(record) << "\n";
}

SolveOneResult solve_one(const std::string& instance_path,
                         const PipelineConfig& config) {
  SolveOneResult result;
  result.record.instance =
      std::filesystem::path(instance_path).filename().string();

  try {
    result.instance = load_instance(instance_path);
  } catch (const std::exception& e) {
    throw PipelineError("load", e.what());
  }

  EncodedModel model;
  double gt_begin = now_seconds();
  try {
    EncodeOptions options;
    options.capacity_families = config.capacity_families;
    model = encode(result.instance, options);
    EmitOptions emit_options;
    emit_options.mode = config.mode;
    emit_options.random_seed = config.random_seed;
    emit_smtlib(model, emit_options);  // rendering cost is part of generation
  } catch (const std::exception& e) {
    throw PipelineError("encode", e.what());
  }
  result.record.gt_s = now_seconds() - gt_begin;

  SolverConfig solver;
  solver.command =
      config.solver_command.empty() ? default_solver_command() : config.solver_command;
  solver.time_limit = config.time_limit;
  solver.random_seed = config.random_seed;
  if (solver.command.empty()) {
    throw PipelineError("solve",
                        "no solver configured (set CFEVRP_SOLVER or --solver)");
  }
  try {
    result.outcome = solve_with_mode(model, config.mode, solver);
  } catch (const std::exception& e) {
    throw PipelineError("solve", e.what());
  }
  result.record.st_s = result.outcome.total_seconds;

  switch (result.outcome.status) {
    case SolveStatus::sat: {
      Schedule schedule;
      try {
        schedule = decode_schedule(result.instance, model.layout,
                                   result.outcome.best_model);
      } catch (const std::exception& e) {
        throw PipelineError("decode", e.what());
      }
      ValidationReport report = validate_schedule(result.instance, schedule);
      if (!report.ok) {
        throw PipelineError(
            "validate", "solver answered sat but the schedule fails: " +
                            validation_report_text(report));
      }
      result.schedule = std::move(schedule);
      result.report = std::move(report);
      result.record.status = "sat";
      result.record.cost = result.outcome.best_cost;
      break;
    }
    case SolveStatus::unsat:
      result.record.status = "unsat";
      break;
    case SolveStatus::unknown:
      // Crashes and give-ups land here too; within the time budget they are
      // indistinguishable from running out of it.
      result.record.status = "timeout";
      result.record.timeout = true;
      break;
  }
  return result;
}

std::string bench_summary_table(const std::vector<BenchRecord>& records) {
  struct CellStats {
    int total = 0, sat = 0, unsat = 0;
    double gt_sum = 0, st_sat_sum = 0, st_unsat_sum = 0;
  };
  std::map<std::string, CellStats> cells;
  for (const BenchRecord& r : records) {
    CellStats& c = cells[r.cell];
    ++c.total;
    c.gt_sum += r.gt_s;
    if (r.status == "sat") {
      ++c.sat;
      c.st_sat_sum += r.st_s;
    } else if (r.status == "unsat") {
      ++c.unsat;
      c.st_unsat_sum += r.st_s;
    }
  }

  auto mean = [](double sum, int n) -> std::string {
    if (n == 0) return "-";
    std::ostringstream out;
    out << std::fixed << std::setprecision(1) << sum / n;
    return out.str();
  };

  std::ostringstream out;
  out << std::left << std::setw(22) << "cell" << std::right << std::setw(7)
      << "Sol" << std::setw(9) << "GT" << std::setw(10) << "ST(sat)"
      << std::setw(9) << "SC(sat)" << std::setw(12) << "ST(unsat)"
      << std::setw(11) << "SC(unsat)" << "\n";
  for (const auto& [cell, c] : cells) {
    std::ostringstream sol;
    sol << (c.sat + c.unsat) << "/" << c.total;
    out << std::left << std::setw(22) << (cell.empty() ? "(none)" : cell)
        << std::right << std::setw(7) << sol.str() << std::setw(9)
        << mean(c.gt_sum, c.total) << std::setw(10) << mean(c.st_sat_sum, c.sat)
        << std::setw(9) << c.sat << std::setw(12)
        << mean(c.st_unsat_sum, c.unsat) << std::setw(11) << c.unsat << "\n";
  }
  return out.str();
}

void run_bench(const std::string& manifest_path, const std::string& csv_path,
               const PipelineConfig& config, int workers, std::ostream& log) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot read manifest " + manifest_path);
  nlohmann::json manifest = nlohmann::json::parse(in);
  if (!manifest.is_array()) throw std::runtime_error("manifest is not a list");
  const std::filesystem::path base =
      std::filesystem::path(manifest_path).parent_path();

  struct Entry {
    std::string file, cell;
  };
  std::vector<Entry> todo;
  std::map<std::string, bool> done;
  for (const BenchRecord& r : load_bench_csv(csv_path)) done[r.instance] = true;
  for (const auto& item : manifest) {
    Entry e;
    e.file = item.at("file").get<std::string>();
    if (item.contains("class")) {
      std::ostringstream cell;
      cell << item.at("class").get<std::string>() << "/r"
           << item.at("reduction").get<int>() << "/d"
           << item.at("deadline").get<int>();
      e.cell = cell.str();
    }
    if (done.count(std::filesystem::path(e.file).filename().string())) continue;
    todo.push_back(e);
  }
  log << todo.size() << " instance(s) to run, " << done.size()
      << " already recorded\n";

  std::mutex mu;
  std::size_t next = 0;
  std::exception_ptr failure;
  auto work = [&]() {
    while (true) {
      std::size_t index;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (failure || next >= todo.size()) return;
        index = next++;
      }
      const Entry& entry = todo[index];
      try {
        SolveOneResult one = solve_one((base / entry.file).string(), config);
        one.record.cell = entry.cell;
        std::lock_guard<std::mutex> lock(mu);
        append_bench_record(csv_path, one.record);
        log << one.record.instance << ": " << one.record.status << " ("
            << format_seconds(one.record.st_s) << "s";
        if (one.record.status == "sat") log << ", cost " << one.record.cost;
        log << ")\n" << std::flush;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  log << "\n" << bench_summary_table(load_bench_csv(csv_path));
}

}  // namespace cfevrp
