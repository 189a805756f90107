// Command-line harness for the fairclust shared library. Subcommands:
//   run      method matrix over a dataset spec, CSV/JSON record emission
//   table    aggregate run records into per-bucket mean/std columns
//   emd      earth mover's distance between color classes or two point files
//   oracle   exhaustive optima on tiny inputs
//   certify  randomized approximation-ratio certificates
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fairclust/fairclust.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(fc_status status) {
    if (status != FC_OK)
        throw CliError(std::string(fc_status_name(status)) + ": " + fc_last_error_message());
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int parse_exponent(const std::string& s, const char* what) {
    if (s == "inf" || s == "infinity") return FC_EXP_INF;
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos == s.size() && v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw CliError(std::string(what) + " must be a positive integer or 'inf'");
}

std::string exponent_name(int v) { return v == FC_EXP_INF ? "inf" : std::to_string(v); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

const std::map<std::string, int>& method_ids() {
    static const std::map<std::string, int> ids = {
        {"relay_all", FC_METHOD_RELAY_ALL},        {"relay_min_emd", FC_METHOD_RELAY_MIN_EMD},
        {"transport_all", FC_METHOD_TRANSPORT_ALL}, {"relay_sampled", FC_METHOD_RELAY_SAMPLED},
        {"fairlet_bound", FC_METHOD_FAIRLET_BOUND}, {"kmedianpp", FC_METHOD_KMEDIANPP},
        {"fair_kcenter", FC_METHOD_FAIR_KCENTER},
    };
    return ids;
}

const std::map<std::string, int>& solver_ids() {
    static const std::map<std::string, int> ids = {
        {"local_search", FC_SOLVER_LOCAL_SEARCH},   {"kpp_medoids", FC_SOLVER_KPP_MEDOIDS},
        {"farthest_first", FC_SOLVER_FARTHEST_FIRST}, {"lloyd", FC_SOLVER_LLOYD},
        {"exhaustive", FC_SOLVER_EXHAUSTIVE},
    };
    return ids;
}

constexpr const char* kDefaultMethods =
    "relay_all,relay_min_emd,transport_all,relay_sampled,fairlet_bound,kmedianpp,fair_kcenter";

struct DatasetHandle {
    fc_dataset* ptr = nullptr;
    ~DatasetHandle() { fc_dataset_free(ptr); }
};

struct TableHandle {
    fc_emd_table* ptr = nullptr;
    ~TableHandle() { fc_emd_table_free(ptr); }
};

struct ResultHandle {
    fc_result* ptr = nullptr;
    ~ResultHandle() { fc_result_free(ptr); }
};

struct SpecHandle {
    fc_spec* ptr = nullptr;
    ~SpecHandle() { fc_spec_free(ptr); }
};

// Loads a headered CSV of raw coordinates (a header row is detected by its
// first cell failing to parse as a number). Used by the two-file emd form.
std::vector<std::vector<double>> read_numeric_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        bool numeric = true;
        for (const std::string& cell : split(line, ',')) {
            char* end = nullptr;
            double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size()) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;  // header
            }
            throw CliError(path + ":" + std::to_string(lineno) + ": non-numeric row");
        }
        first = false;
        if (!rows.empty() && rows.back().size() != row.size())
            throw CliError(path + ":" + std::to_string(lineno) + ": ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw CliError(path + ": no data rows");
    return rows;
}

std::vector<int> read_fairlet_ids(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open '" + path + "'");
    std::vector<int> ids;
    std::string tok;
    while (in >> tok) {
        try {
            ids.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw CliError(path + ": expected one integer fairlet id per line, got '" + tok + "'");
        }
    }
    if (ids.empty()) throw CliError(path + ": no fairlet ids");
    return ids;
}

struct Record {
    int sample_id = 0;
    int method_order = 0;
    std::string method;
    int k = 0;
    double cost = 0.0;
    bool balanced = false;
    int base_color = -1;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
};

struct Failure {
    int sample_id;
    std::string method;
    int k;
    std::string message;
};

// ---- run ----

struct RunArgs {
    std::string spec_path;
    std::string methods = kDefaultMethods;
    std::string p = "1", q = "2";
    int k_min = 2, k_max = 20;
    std::string solver = "local_search";
    int max_iterations = 100;
    double improvement_threshold = 1e-4;
    double delta = 0.1;
    bool greedy_emd = false;
    std::string fairlets_file;
    std::uint64_t seed = 0;
    int threads = 1;
    bool emit_json = false;
    std::string out_dir = ".";
};

int cmd_run(const RunArgs& args) {
    const int p = parse_exponent(args.p, "p");
    const int q = parse_exponent(args.q, "q");
    if (args.k_min < 1 || args.k_max < args.k_min) throw CliError("need 1 <= k_min <= k_max");
    if (args.threads < 1) throw CliError("--threads must be positive");

    std::vector<std::pair<std::string, int>> methods;
    for (const std::string& name : split(args.methods, ',')) {
        auto it = method_ids().find(name);
        if (it == method_ids().end()) throw CliError("unknown method '" + name + "'");
        methods.emplace_back(name, it->second);
    }
    if (methods.empty()) throw CliError("no methods selected");
    auto solver_it = solver_ids().find(args.solver);
    if (solver_it == solver_ids().end()) throw CliError("unknown solver '" + args.solver + "'");
    const int solver = solver_it->second;

    SpecHandle spec;
    check(fc_spec_open(args.spec_path.c_str(), &spec.ptr));
    const std::string dataset = fc_spec_name(spec.ptr);
    const int num_samples = fc_spec_num_samples(spec.ptr);

    std::vector<int> fairlet_ids;
    if (!args.fairlets_file.empty()) {
        if (num_samples != 1)
            throw CliError("--fairlets requires a spec with num_samples = 1 (ids are per-point)");
        fairlet_ids = read_fairlet_ids(args.fairlets_file);
    }

    std::vector<std::vector<Record>> per_sample(num_samples);
    std::vector<std::vector<Failure>> per_sample_failures(num_samples);
    std::atomic<int> next{0};

    auto worker = [&] {
        for (;;) {
            const int s = next.fetch_add(1);
            if (s >= num_samples) return;
            const std::uint64_t run_seed = fc_mix_seed(args.seed, static_cast<std::uint64_t>(s));
            DatasetHandle ds;
            fc_status st = fc_spec_sample(spec.ptr, s, &ds.ptr);
            if (st != FC_OK) {
                per_sample_failures[s].push_back(
                    {s, "(sample)", 0, std::string(fc_last_error_message())});
                continue;
            }
            if (!fairlet_ids.empty() &&
                static_cast<int>(fairlet_ids.size()) != fc_dataset_num_points(ds.ptr))
                throw CliError("--fairlets id count does not match the sample size");

            TableHandle table;
            bool want_table = false;
            for (const auto& m : methods)
                if (m.second != FC_METHOD_KMEDIANPP) want_table = true;
            if (want_table && fc_emd_table_create(ds.ptr, p, q, 0, &table.ptr) != FC_OK)
                table.ptr = nullptr;  // methods recompute on their own

            fc_run_options opts;
            fc_run_options_init(&opts);
            opts.p = p;
            opts.q = q;
            opts.solver = solver;
            opts.max_iterations = args.max_iterations;
            opts.improvement_threshold = args.improvement_threshold;
            opts.delta = args.delta;
            opts.greedy_emd = args.greedy_emd ? 1 : 0;
            opts.seed = run_seed;

            for (std::size_t mi = 0; mi < methods.size(); ++mi) {
                opts.method = methods[mi].second;
                for (int k = args.k_min; k <= args.k_max; ++k) {
                    opts.k = k;
                    ResultHandle res;
                    st = fc_run_method(ds.ptr, &opts, table.ptr, &res.ptr);
                    if (st != FC_OK) {
                        per_sample_failures[s].push_back(
                            {s, methods[mi].first, k, std::string(fc_last_error_message())});
                        continue;
                    }
                    per_sample[s].push_back({s, static_cast<int>(mi), methods[mi].first, k,
                                             fc_result_cost(res.ptr),
                                             fc_result_balanced(res.ptr) != 0,
                                             fc_result_base_color(res.ptr), run_seed,
                                             fc_result_wall_ms(res.ptr)});
                }
            }
            if (!fairlet_ids.empty()) {
                opts.method = FC_METHOD_RELAY_ALL;  // unused by the call below
                for (int k = args.k_min; k <= args.k_max; ++k) {
                    opts.k = k;
                    ResultHandle res;
                    st = fc_run_external_fairlets(ds.ptr, fairlet_ids.data(), &opts, &res.ptr);
                    if (st != FC_OK) {
                        per_sample_failures[s].push_back(
                            {s, "external_fairlets", k, std::string(fc_last_error_message())});
                        continue;
                    }
                    per_sample[s].push_back({s, static_cast<int>(methods.size()),
                                             "external_fairlets", k, fc_result_cost(res.ptr),
                                             fc_result_balanced(res.ptr) != 0, -1, run_seed,
                                             fc_result_wall_ms(res.ptr)});
                }
            }
        }
    };

    if (args.threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < args.threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::vector<Record> records;
    std::vector<Failure> failures;
    for (int s = 0; s < num_samples; ++s) {
        records.insert(records.end(), per_sample[s].begin(), per_sample[s].end());
        failures.insert(failures.end(), per_sample_failures[s].begin(),
                        per_sample_failures[s].end());
    }
    std::sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
        if (a.sample_id != b.sample_id) return a.sample_id < b.sample_id;
        if (a.method_order != b.method_order) return a.method_order < b.method_order;
        return a.k < b.k;
    });

    std::filesystem::create_directories(args.out_dir);
    const std::string records_path = args.out_dir + "/records.csv";
    {
        std::ofstream out(records_path, std::ios::binary);
        if (!out) throw CliError("cannot write '" + records_path + "'");
        out << "dataset,sample_id,method,k,cost,balanced,base_color,seed\n";
        for (const Record& r : records)
            out << dataset << ',' << r.sample_id << ',' << r.method << ',' << r.k << ','
                << fmt(r.cost) << ',' << (r.balanced ? "true" : "false") << ',' << r.base_color
                << ',' << r.seed << '\n';
    }
    {
        json timings = json::array();
        for (const Record& r : records)
            timings.push_back({{"sample_id", r.sample_id},
                               {"method", r.method},
                               {"k", r.k},
                               {"wall_time_ms", r.wall_ms}});
        std::ofstream out(args.out_dir + "/timings.json", std::ios::binary);
        out << json{{"note", "wall times are environment-dependent and kept out of records.csv"},
                    {"timings", timings}}
                   .dump(2)
            << '\n';
    }
    {
        json meta{{"dataset", dataset},
                  {"spec", args.spec_path},
                  {"num_samples", num_samples},
                  {"subsample_size", fc_spec_subsample_size(spec.ptr)},
                  {"num_colors", fc_spec_num_colors(spec.ptr)},
                  {"rows_kept", fc_spec_rows_kept(spec.ptr)},
                  {"k_min", args.k_min},
                  {"k_max", args.k_max},
                  {"p", exponent_name(p)},
                  {"q", exponent_name(q)},
                  {"solver", args.solver},
                  {"delta", args.delta},
                  {"emd_mode", args.greedy_emd ? "greedy" : "exact"},
                  {"seed", args.seed},
                  {"records", records.size()},
                  {"records_file", "records.csv"}};
        json fails = json::array();
        for (const Failure& f : failures)
            fails.push_back({{"sample_id", f.sample_id},
                             {"method", f.method},
                             {"k", f.k},
                             {"error", f.message}});
        meta["failures"] = fails;
        std::ofstream out(args.out_dir + "/meta.json", std::ios::binary);
        out << meta.dump(2) << '\n';
    }
    if (args.emit_json) {
        json arr = json::array();
        for (const Record& r : records)
            arr.push_back({{"dataset", dataset},
                           {"sample_id", r.sample_id},
                           {"method", r.method},
                           {"k", r.k},
                           {"cost", r.cost},
                           {"balanced", r.balanced},
                           {"base_color", r.base_color},
                           {"seed", r.seed},
                           {"wall_time_ms", r.wall_ms}});
        std::ofstream out(args.out_dir + "/records.json", std::ios::binary);
        out << arr.dump(2) << '\n';
    }
    std::cout << "wrote " << records.size() << " records for " << num_samples << " sample(s) to "
              << records_path << "\n";
    if (!failures.empty())
        std::cout << failures.size() << " run(s) failed; see meta.json for details\n";
    return 0;
}

// ---- table ----

struct Bucket {
    int lo, hi;
};

std::vector<Bucket> parse_buckets(const std::string& text) {
    std::vector<Bucket> out;
    for (const std::string& part : split(text, ',')) {
        const auto bounds = split(part, ':');
        if (bounds.size() != 2) throw CliError("bucket '" + part + "' is not lo:hi");
        try {
            Bucket b{std::stoi(bounds[0]), std::stoi(bounds[1])};
            if (b.lo > b.hi) throw CliError("bucket '" + part + "' has lo > hi");
            out.push_back(b);
        } catch (const CliError&) {
            throw;
        } catch (const std::exception&) {
            throw CliError("bucket '" + part + "' is not lo:hi");
        }
    }
    if (out.empty()) throw CliError("no buckets given");
    return out;
}

int cmd_table(const std::string& records_path, const std::string& buckets_text,
              const std::string& out_dir, bool emit_json) {
    const std::vector<Bucket> buckets = parse_buckets(buckets_text);
    std::ifstream in(records_path);
    if (!in) throw CliError("cannot open '" + records_path + "'");
    std::string line;
    if (!std::getline(in, line)) throw CliError(records_path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split(line, ',');
    auto col = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw CliError(records_path + ": missing column '" + name + "'");
    };
    const int method_col = col("method"), k_col = col("k"), cost_col = col("cost");

    std::vector<std::string> method_order;
    std::map<std::string, std::vector<std::pair<int, double>>> by_method;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != header.size())
            throw CliError(records_path + ":" + std::to_string(lineno) + ": wrong field count");
        try {
            const std::string& method = cells[method_col];
            const int k = std::stoi(cells[k_col]);
            const double cost = std::stod(cells[cost_col]);
            if (!by_method.count(method)) method_order.push_back(method);
            by_method[method].emplace_back(k, cost);
        } catch (const std::exception&) {
            throw CliError(records_path + ":" + std::to_string(lineno) + ": unparseable record");
        }
    }
    if (by_method.empty()) throw CliError(records_path + ": no records to aggregate");

    struct Row {
        std::string method;
        Bucket bucket;
        double mean, stddev;
        long count;
    };
    std::vector<Row> rows;
    for (const std::string& method : method_order) {
        for (const Bucket& b : buckets) {
            double sum = 0;
            long count = 0;
            for (const auto& [k, cost] : by_method[method])
                if (k >= b.lo && k <= b.hi) {
                    sum += cost;
                    ++count;
                }
            if (count == 0) continue;
            const double mean = sum / static_cast<double>(count);
            double ss = 0;
            for (const auto& [k, cost] : by_method[method])
                if (k >= b.lo && k <= b.hi) ss += (cost - mean) * (cost - mean);
            rows.push_back({method, b, mean, std::sqrt(ss / static_cast<double>(count)), count});
        }
    }

    std::filesystem::create_directories(out_dir);
    const std::string table_path = out_dir + "/table.csv";
    {
        std::ofstream out(table_path, std::ios::binary);
        if (!out) throw CliError("cannot write '" + table_path + "'");
        out << "method,k_lo,k_hi,mean_cost,std_cost,records\n";
        for (const Row& r : rows)
            out << r.method << ',' << r.bucket.lo << ',' << r.bucket.hi << ',' << fmt(r.mean)
                << ',' << fmt(r.stddev) << ',' << r.count << '\n';
    }
    {
        json jrows = json::array();
        for (const Row& r : rows)
            jrows.push_back({{"method", r.method},
                             {"k_lo", r.bucket.lo},
                             {"k_hi", r.bucket.hi},
                             {"mean_cost", r.mean},
                             {"std_cost", r.stddev},
                             {"records", r.count}});
        json meta{{"std_convention", "population (divides by record count)"},
                  {"source", records_path},
                  {"rows", jrows}};
        std::ofstream out(out_dir + "/table.json", std::ios::binary);
        out << meta.dump(2) << '\n';
    }

    std::cout << "method                k bucket        mean          std    records\n";
    for (const Row& r : rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-20s  [%d, %d]%*s  %12.4f  %11.4f  %9ld\n",
                      r.method.c_str(), r.bucket.lo, r.bucket.hi,
                      static_cast<int>(8 - std::to_string(r.bucket.lo).size() -
                                       std::to_string(r.bucket.hi).size()),
                      "", r.mean, r.stddev, r.count);
        std::cout << buf;
    }
    if (emit_json) std::cout << "table.json written alongside table.csv\n";
    return 0;
}

// ---- emd ----

int cmd_emd(const std::vector<std::string>& files, const std::string& p_text,
            const std::string& q_text, bool greedy, bool want_table, int sample_id, int color_a,
            int color_b, bool emit_json) {
    const int p = parse_exponent(p_text, "p");
    const int q = parse_exponent(q_text, "q");
    DatasetHandle ds;
    if (files.size() == 2) {
        const auto a = read_numeric_csv(files[0]);
        const auto b = read_numeric_csv(files[1]);
        if (a[0].size() != b[0].size()) throw CliError("the two files have different dimensions");
        std::vector<double> coords;
        std::vector<int> colors;
        for (const auto& row : a) {
            coords.insert(coords.end(), row.begin(), row.end());
            colors.push_back(0);
        }
        for (const auto& row : b) {
            coords.insert(coords.end(), row.begin(), row.end());
            colors.push_back(1);
        }
        check(fc_dataset_create(coords.data(), static_cast<int>(colors.size()),
                                static_cast<int>(a[0].size()), colors.data(), &ds.ptr));
    } else if (files[0].size() > 5 && files[0].substr(files[0].size() - 5) == ".spec") {
        SpecHandle spec;
        check(fc_spec_open(files[0].c_str(), &spec.ptr));
        check(fc_spec_sample(spec.ptr, sample_id, &ds.ptr));
    } else {
        check(fc_dataset_read_points_csv(files[0].c_str(), &ds.ptr));
    }

    const int num_colors = fc_dataset_num_colors(ds.ptr);
    if (want_table) {
        std::vector<std::vector<double>> table(num_colors, std::vector<double>(num_colors, 0.0));
        TableHandle th;
        check(fc_emd_table_create(ds.ptr, p, q, greedy ? 1 : 0, &th.ptr));
        for (int i = 0; i < num_colors; ++i)
            for (int j = 0; j < num_colors; ++j)
                if (i != j) check(fc_emd_table_value(th.ptr, i, j, &table[i][j]));
        if (emit_json) {
            std::cout << json{{"p", exponent_name(p)},
                              {"q", exponent_name(q)},
                              {"mode", greedy ? "greedy" : "exact"},
                              {"table", table}}
                             .dump(2)
                      << '\n';
        } else {
            std::cout << "color";
            for (int j = 0; j < num_colors; ++j) std::cout << ",color_" << j;
            std::cout << '\n';
            for (int i = 0; i < num_colors; ++i) {
                std::cout << "color_" << i;
                for (int j = 0; j < num_colors; ++j) std::cout << ',' << fmt(table[i][j]);
                std::cout << '\n';
            }
        }
        return 0;
    }
    double value = 0;
    check(fc_emd(ds.ptr, color_a, color_b, p, q, greedy ? 1 : 0, &value));
    if (emit_json)
        std::cout << json{{"p", exponent_name(p)},
                          {"q", exponent_name(q)},
                          {"mode", greedy ? "greedy" : "exact"},
                          {"color_a", color_a},
                          {"color_b", color_b},
                          {"emd", value}}
                         .dump(2)
                  << '\n';
    else
        std::cout << fmt(value) << '\n';
    return 0;
}

// ---- oracle ----

int cmd_oracle(const std::string& points_path, int k, const std::string& p_text,
               const std::string& q_text, const std::string& centers_text, bool unconstrained,
               bool emit_json) {
    const int p = parse_exponent(p_text, "p");
    const int q = parse_exponent(q_text, "q");
    DatasetHandle ds;
    check(fc_dataset_read_points_csv(points_path.c_str(), &ds.ptr));

    if (unconstrained) {
        double cost = 0;
        check(fc_oracle_unconstrained(ds.ptr, k, p, q, &cost));
        if (emit_json)
            std::cout << json{{"kind", "unconstrained_opt"}, {"k", k}, {"cost", cost}}.dump(2)
                      << '\n';
        else
            std::cout << fmt(cost) << '\n';
        return 0;
    }

    ResultHandle res;
    std::string kind;
    if (!centers_text.empty()) {
        std::vector<int> centers;
        for (const std::string& tok : split(centers_text, ','))
            try {
                centers.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw CliError("--centers expects comma-separated point indices");
            }
        check(fc_oracle_fair_assign(ds.ptr, centers.data(), static_cast<int>(centers.size()), p,
                                    q, &res.ptr));
        kind = "fair_assign_opt";
    } else {
        check(fc_oracle_fair_opt(ds.ptr, k, p, q, &res.ptr));
        kind = "fair_opt";
    }
    if (emit_json) {
        const int n = fc_dataset_num_points(ds.ptr);
        std::vector<int> assignment(static_cast<std::size_t>(n));
        check(fc_result_assignment(res.ptr, assignment.data()));
        json centers = json::array();
        for (int c = 0; c < fc_result_num_centers(res.ptr); ++c) {
            int idx = -1;
            check(fc_result_center_index(res.ptr, c, &idx));
            if (idx >= 0) {
                centers.push_back(idx);
            } else {
                std::vector<double> coords(
                    static_cast<std::size_t>(fc_result_center_dim(res.ptr)));
                check(fc_result_center_coords(res.ptr, c, coords.data()));
                centers.push_back(coords);
            }
        }
        std::cout << json{{"kind", kind},
                          {"cost", fc_result_cost(res.ptr)},
                          {"balanced", fc_result_balanced(res.ptr) != 0},
                          {"centers", centers},
                          {"assignment", assignment}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << fmt(fc_result_cost(res.ptr)) << '\n';
    }
    return 0;
}

// ---- certify ----

int cmd_certify(long trials, std::uint64_t seed, bool emit_json) {
    fc_certify_report rep;
    check(fc_certify(trials, seed, &rep));
    if (emit_json) {
        std::cout << json{{"trials", rep.trials},
                          {"relay_checked", rep.relay_checked},
                          {"center_checked", rep.center_checked},
                          {"violations", rep.violations},
                          {"max_relay_ratio", rep.max_relay_ratio},
                          {"max_min_emd_ratio", rep.max_min_emd_ratio},
                          {"max_center_ratio", rep.max_center_ratio},
                          {"bounds", {3.0, 5.0, 3.0}},
                          {"ok", rep.ok != 0}}
                         .dump(2)
                  << '\n';
    } else {
        std::cout << "trials:           " << rep.trials << '\n'
                  << "relay ratio:      " << fmt(rep.max_relay_ratio) << "  (bound 3)\n"
                  << "min-emd ratio:    " << fmt(rep.max_min_emd_ratio) << "  (bound 5)\n"
                  << "center ratio:     " << fmt(rep.max_center_ratio) << "  (bound 3)\n"
                  << "violations:       " << rep.violations << '\n'
                  << (rep.ok ? "all bounds hold\n" : "BOUND VIOLATED\n");
    }
    return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fair (balanced) clustering toolkit"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "run the method matrix over a dataset spec");
    run->add_option("spec", run_args.spec_path, "dataset spec file")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--methods", run_args.methods, "comma-separated method list");
    run->add_option("-p", run_args.p, "aggregation exponent (positive integer or 'inf')");
    run->add_option("-q", run_args.q, "ground norm exponent (positive integer or 'inf')");
    run->add_option("--kmin", run_args.k_min, "smallest k");
    run->add_option("--kmax", run_args.k_max, "largest k");
    run->add_option("--solver", run_args.solver,
                    "inner solver: local_search, kpp_medoids, farthest_first, lloyd, exhaustive");
    run->add_option("--max-iterations", run_args.max_iterations, "solver iteration cap");
    run->add_option("--threshold", run_args.improvement_threshold,
                    "relative improvement threshold");
    run->add_option("--delta", run_args.delta, "failure probability of the sampled variant");
    run->add_flag("--greedy-emd", run_args.greedy_emd, "greedy matchings in the sampled variant");
    run->add_option("--fairlets", run_args.fairlets_file,
                    "externally computed fairlet id per point (num_samples must be 1)");
    run->add_option("--seed", run_args.seed, "master seed");
    run->add_option("--threads", run_args.threads, "worker threads over samples");
    run->add_flag("--json", run_args.emit_json, "also emit records.json");
    run->add_option("--out", run_args.out_dir, "output directory");

    std::string table_records, table_buckets = "2:5,6:10,11:20", table_out = ".";
    bool table_json = false;
    CLI::App* table = app.add_subcommand("table", "aggregate run records into k-bucket columns");
    table->add_option("records", table_records, "records.csv from a run")
        ->required()
        ->check(CLI::ExistingFile);
    table->add_option("--buckets", table_buckets, "comma-separated lo:hi k buckets");
    table->add_option("--out", table_out, "output directory");
    table->add_flag("--json", table_json, "note the JSON emission on stdout");

    std::vector<std::string> emd_files;
    std::string emd_p = "1", emd_q = "2";
    bool emd_greedy = false, emd_table = false, emd_json = false;
    int emd_sample = 0, emd_color_a = 0, emd_color_b = 1;
    CLI::App* emd = app.add_subcommand(
        "emd", "earth mover's distance between color classes or two point files");
    emd->add_option("files", emd_files, "a spec/points file, or two raw coordinate CSVs")
        ->required()
        ->expected(1, 2);
    emd->add_option("-p", emd_p, "aggregation exponent");
    emd->add_option("-q", emd_q, "ground norm exponent");
    emd->add_flag("--greedy", emd_greedy, "greedy matching instead of exact");
    emd->add_flag("--table", emd_table, "full pairwise color table");
    emd->add_option("--sample", emd_sample, "sample id when reading a spec");
    emd->add_option("--color-a", emd_color_a, "first color class");
    emd->add_option("--color-b", emd_color_b, "second color class");
    emd->add_flag("--json", emd_json, "JSON output");

    std::string oracle_points, oracle_p = "1", oracle_q = "2", oracle_centers;
    int oracle_k = 2;
    bool oracle_unconstrained = false, oracle_json = false;
    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive optima on tiny inputs");
    oracle->add_option("points", oracle_points, "points CSV with a 'color' column")
        ->required()
        ->check(CLI::ExistingFile);
    oracle->add_option("-k", oracle_k, "number of clusters");
    oracle->add_option("-p", oracle_p, "aggregation exponent");
    oracle->add_option("-q", oracle_q, "ground norm exponent");
    oracle->add_option("--centers", oracle_centers,
                       "fix these centers (comma-separated point indices)");
    oracle->add_flag("--unconstrained", oracle_unconstrained,
                     "optimal unconstrained medoid cost instead of the fair optimum");
    oracle->add_flag("--json", oracle_json, "JSON output");

    long certify_trials = 200;
    std::uint64_t certify_seed = 1;
    bool certify_json = false;
    CLI::App* certify =
        app.add_subcommand("certify", "randomized approximation-ratio certificates");
    certify->add_option("--trials", certify_trials, "number of random instances");
    certify->add_option("--seed", certify_seed, "trial seed");
    certify->add_flag("--json", certify_json, "JSON output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (table->parsed())
            return cmd_table(table_records, table_buckets, table_out, table_json);
        if (emd->parsed())
            return cmd_emd(emd_files, emd_p, emd_q, emd_greedy, emd_table, emd_sample,
                           emd_color_a, emd_color_b, emd_json);
        if (oracle->parsed())
            return cmd_oracle(oracle_points, oracle_k, oracle_p, oracle_q, oracle_centers,
                              oracle_unconstrained, oracle_json);
        if (certify->parsed()) return cmd_certify(certify_trials, certify_seed, certify_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
