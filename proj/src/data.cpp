#include "data.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "error.hpp"
#include "rng.hpp"

namespace fairclust {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

bool parse_number(const std::string& s, double* out) {
    const std::string t = trim(s);
    if (t.empty()) return false;
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) return false;
    *out = v;
    return true;
}

// "kind(args)" -> args, validating the kind prefix
bool unwrap_call(const std::string& s, const std::string& kind, std::string* args) {
    if (s.size() < kind.size() + 2) return false;
    if (s.compare(0, kind.size(), kind) != 0) return false;
    std::string rest = trim(s.substr(kind.size()));
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') return false;
    *args = trim(rest.substr(1, rest.size() - 2));
    return true;
}

DichotomyRule parse_rule(const std::string& text, const std::string& where) {
    DichotomyRule rule;
    std::string args;
    if (unwrap_call(text, "threshold", &args)) {
        rule.kind = RuleKind::threshold;
        if (!parse_number(args, &rule.threshold))
            raise(errc::parse_error, where + ": threshold(...) needs a number, got '" + args + "'");
        return rule;
    }
    if (unwrap_call(text, "is", &args)) {
        rule.kind = RuleKind::equals;
        if (args.empty()) raise(errc::parse_error, where + ": is(...) needs a value");
        rule.value = args;
        return rule;
    }
    if (unwrap_call(text, "values", &args)) {
        rule.kind = RuleKind::two_sets;
        std::size_t bar = args.find('|');
        if (bar == std::string::npos)
            raise(errc::parse_error, where + ": values(...) needs two '|'-separated sides");
        rule.side_a = split_list(args.substr(0, bar), ',');
        rule.side_b = split_list(args.substr(bar + 1), ',');
        auto clean = [&](std::vector<std::string>& side) {
            side.erase(std::remove(side.begin(), side.end(), std::string()), side.end());
            if (side.empty()) raise(errc::parse_error, where + ": empty side in values(...)");
        };
        clean(rule.side_a);
        clean(rule.side_b);
        return rule;
    }
    raise(errc::parse_error, where + ": expected threshold(x), is(v) or values(a,..|b,..)");
}

}  // namespace

DatasetSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::io_error, "cannot open spec file '" + path + "'");
    DatasetSpec spec;
    bool saw_size = false, saw_samples = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        const std::string where = path + ":" + std::to_string(lineno);
        if (eq == std::string::npos) raise(errc::parse_error, where + ": expected 'key = value'");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (value.empty()) raise(errc::parse_error, where + ": empty value for '" + key + "'");
        if (key == "name") {
            spec.name = value;
        } else if (key == "source") {
            spec.source = value;
        } else if (key == "features") {
            spec.feature_columns = split_list(value, ',');
            for (const auto& c : spec.feature_columns)
                if (c.empty()) raise(errc::parse_error, where + ": empty feature name");
        } else if (key == "protected") {
            std::istringstream vs(value);
            std::string column;
            vs >> column;
            std::string rest;
            std::getline(vs, rest);
            rest = trim(rest);
            if (column.empty() || rest.empty())
                raise(errc::parse_error, where + ": expected '<column> <rule>'");
            spec.protected_columns.push_back({column, parse_rule(rest, where)});
        } else if (key == "subsample_size") {
            double v = 0;
            if (!parse_number(value, &v) || v < 1 || v != static_cast<int>(v))
                raise(errc::parse_error, where + ": subsample_size must be a positive integer");
            spec.subsample_size = static_cast<int>(v);
            saw_size = true;
        } else if (key == "num_samples") {
            double v = 0;
            if (!parse_number(value, &v) || v < 1 || v != static_cast<int>(v))
                raise(errc::parse_error, where + ": num_samples must be a positive integer");
            spec.num_samples = static_cast<int>(v);
            saw_samples = true;
        } else if (key == "seed") {
            spec.seed = std::strtoull(value.c_str(), nullptr, 10);
        } else if (key == "normalize") {
            if (value == "none")
                spec.minmax_normalize = false;
            else if (value == "minmax")
                spec.minmax_normalize = true;
            else
                raise(errc::parse_error, where + ": normalize must be 'none' or 'minmax'");
        } else {
            raise(errc::parse_error, where + ": unknown key '" + key + "'");
        }
    }
    if (spec.name.empty()) raise(errc::parse_error, path + ": missing 'name'");
    if (spec.source.empty()) raise(errc::parse_error, path + ": missing 'source'");
    if (spec.feature_columns.empty()) raise(errc::parse_error, path + ": missing 'features'");
    if (spec.protected_columns.empty() || spec.protected_columns.size() > 3)
        raise(errc::parse_error, path + ": need between 1 and 3 'protected' lines");
    if (!saw_size) raise(errc::parse_error, path + ": missing 'subsample_size'");
    if (!saw_samples) spec.num_samples = 1;
    return spec;
}

std::vector<std::vector<std::string>> read_csv_rows(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::io_error, "cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool had_any = false;
    auto end_field = [&]() {
        row.push_back(field);
        field.clear();
    };
    auto end_row = [&]() {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        had_any = true;
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_row();
        } else {
            field.push_back(c);
        }
    }
    if (quoted) raise(errc::parse_error, path + ": unterminated quoted field");
    if (!field.empty() || !row.empty()) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        end_row();
    }
    if (!had_any || rows.empty()) raise(errc::parse_error, path + ": empty file");
    return rows;
}

std::vector<int> dichotomize(const std::vector<std::string>& values, const DichotomyRule& rule) {
    std::vector<int> labels(values.size(), 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string v = trim(values[i]);
        switch (rule.kind) {
            case RuleKind::threshold: {
                double x = 0;
                if (!parse_number(v, &x))
                    raise(errc::parse_error,
                          "non-numeric value '" + v + "' under a threshold rule");
                labels[i] = x >= rule.threshold ? 1 : 0;
                break;
            }
            case RuleKind::equals:
                labels[i] = v == rule.value ? 1 : 0;
                break;
            case RuleKind::two_sets: {
                bool in_a = std::find(rule.side_a.begin(), rule.side_a.end(), v) != rule.side_a.end();
                bool in_b = std::find(rule.side_b.begin(), rule.side_b.end(), v) != rule.side_b.end();
                if (in_a && in_b)
                    raise(errc::parse_error, "value '" + v + "' appears on both sides of a values rule");
                labels[i] = in_b ? 1 : (in_a ? 0 : -1);
                break;
            }
        }
    }
    long count0 = 0, count1 = 0;
    for (int l : labels) {
        if (l == 0) ++count0;
        if (l == 1) ++count1;
    }
    if (count0 == 0 || count1 == 0)
        raise(errc::invalid_argument, "dichotomization produced an empty side");
    return labels;
}

RawTable load_csv(const DatasetSpec& spec) {
    const auto rows = read_csv_rows(spec.source);
    const auto& header = rows.front();
    auto column_index = [&](const std::string& name) -> std::size_t {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (trim(header[c]) == name) return c;
        raise(errc::parse_error, spec.source + ": column '" + name + "' not found");
    };

    std::vector<std::size_t> feat_cols;
    for (const auto& name : spec.feature_columns) feat_cols.push_back(column_index(name));
    std::vector<std::size_t> prot_cols;
    for (const auto& p : spec.protected_columns) prot_cols.push_back(column_index(p.column));

    const int dim = static_cast<int>(feat_cols.size());
    const std::size_t m = spec.protected_columns.size();
    constexpr std::size_t kMaxDiagnostics = 20;

    RawTable table;
    table.dim = dim;
    table.num_colors = 1 << m;
    LoadReport& rep = table.report;
    rep.rows_read = static_cast<long>(rows.size()) - 1;

    std::vector<double> feats;                     // surviving rows, row-major
    std::vector<std::vector<std::string>> prot(m); // protected strings per rule
    auto reject = [&](std::size_t row, const std::string& why) {
        ++rep.rejected;
        if (rep.diagnostics.size() < kMaxDiagnostics)
            rep.diagnostics.push_back("row " + std::to_string(row) + ": " + why);
    };

    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() < header.size()) {
            reject(r, "expected " + std::to_string(header.size()) + " fields, got " +
                          std::to_string(row.size()));
            continue;
        }
        std::vector<double> vals(dim);
        bool ok = true;
        for (int j = 0; j < dim && ok; ++j) {
            if (!parse_number(row[feat_cols[j]], &vals[j])) {
                reject(r, "non-numeric value '" + trim(row[feat_cols[j]]) + "' in column '" +
                              spec.feature_columns[j] + "'");
                ok = false;
            }
        }
        if (!ok) continue;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& rule = spec.protected_columns[i].rule;
            if (rule.kind == RuleKind::threshold) {
                double x = 0;
                if (!parse_number(row[prot_cols[i]], &x)) {
                    reject(r, "non-numeric value '" + trim(row[prot_cols[i]]) + "' in column '" +
                                  spec.protected_columns[i].column + "'");
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) continue;
        feats.insert(feats.end(), vals.begin(), vals.end());
        for (std::size_t i = 0; i < m; ++i) prot[i].push_back(row[prot_cols[i]]);
    }

    const std::size_t survivors = prot.empty() ? feats.size() / std::max(dim, 1) : prot[0].size();
    if (survivors == 0) raise(errc::invalid_argument, spec.source + ": no usable rows");

    std::vector<std::vector<int>> labels(m);
    for (std::size_t i = 0; i < m; ++i) labels[i] = dichotomize(prot[i], spec.protected_columns[i].rule);

    std::map<std::pair<std::vector<double>, int>, bool> seen;
    for (std::size_t r = 0; r < survivors; ++r) {
        int color = 0;
        bool matched = true;
        for (std::size_t i = 0; i < m; ++i) {
            if (labels[i][r] < 0) {
                matched = false;
                break;
            }
            color |= labels[i][r] << i;
        }
        if (!matched) {
            ++rep.unmatched;
            continue;
        }
        std::vector<double> vals(feats.begin() + static_cast<long>(r) * dim,
                                 feats.begin() + static_cast<long>(r + 1) * dim);
        auto key = std::make_pair(std::move(vals), color);
        if (seen.count(key)) {
            ++rep.duplicates;
            continue;
        }
        table.features.insert(table.features.end(), key.first.begin(), key.first.end());
        table.colors.push_back(color);
        seen.emplace(std::move(key), true);
    }
    rep.rows_kept = static_cast<long>(table.colors.size());
    if (rep.rows_kept == 0) raise(errc::invalid_argument, spec.source + ": no usable rows");

    if (spec.minmax_normalize) {
        for (int j = 0; j < dim; ++j) {
            double lo = table.features[j], hi = table.features[j];
            for (long r = 0; r < rep.rows_kept; ++r) {
                double v = table.features[static_cast<std::size_t>(r) * dim + j];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            const double span = hi - lo;
            for (long r = 0; r < rep.rows_kept; ++r) {
                double& v = table.features[static_cast<std::size_t>(r) * dim + j];
                v = span > 0 ? (v - lo) / span : 0.0;
            }
        }
    }
    return table;
}

ColoredDataset balanced_subsample(const RawTable& table, int size, std::uint64_t seed) {
    if (size < 1) raise(errc::invalid_argument, "subsample size must be positive");
    const int colors = table.num_colors;
    if (size % colors != 0)
        raise(errc::invalid_argument, "subsample size " + std::to_string(size) +
                                          " is not divisible by " + std::to_string(colors) +
                                          " colors");
    const int need = size / colors;
    std::vector<std::vector<std::size_t>> by_color(colors);
    for (std::size_t r = 0; r < table.colors.size(); ++r)
        by_color[static_cast<std::size_t>(table.colors[r])].push_back(r);
    for (int c = 0; c < colors; ++c) {
        if (static_cast<int>(by_color[c].size()) < need)
            raise(errc::invalid_argument,
                  "color " + std::to_string(c) + " has " + std::to_string(by_color[c].size()) +
                      " distinct rows, need " + std::to_string(need));
    }

    Rng rng(seed);
    std::vector<double> coords;
    std::vector<int> point_colors;
    coords.reserve(static_cast<std::size_t>(size) * table.dim);
    point_colors.reserve(size);
    for (int c = 0; c < colors; ++c) {
        const auto picks = rng.sample_without_replacement(by_color[c].size(), need);
        for (std::size_t idx : picks) {
            const std::size_t r = by_color[c][idx];
            coords.insert(coords.end(), table.features.begin() + static_cast<long>(r) * table.dim,
                          table.features.begin() + static_cast<long>(r + 1) * table.dim);
            point_colors.push_back(c);
        }
    }
    return ColoredDataset(std::move(coords), table.dim, std::move(point_colors));
}

}  // namespace fairclust
