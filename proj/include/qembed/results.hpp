// Copyright 2026 The qembed Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "feature_maps.hpp"
#include "grid.hpp"
#include "metrics.hpp"

namespace qembed {

enum class ResultFormat { Csv, Json, Markdown };

inline std::optional<ResultFormat> parse_result_format(std::string_view s) {
    if (s == "csv") return ResultFormat::Csv;
    if (s == "json") return ResultFormat::Json;
    if (s == "md" || s == "markdown") return ResultFormat::Markdown;
    return std::nullopt;
}

namespace detail {

/// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

inline std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

inline std::size_t max_epochs(const std::vector<RunRecord> &records) {
    std::size_t n = 5;
    for (const auto &r : records) n = std::max(n, r.epoch_accuracies.size());
    return n;
}

} // namespace detail

/**
 * CSV with columns dataset,encoding,axis,N,M,ep1..ep5,test,f1,seed,wall_time_s.
 *
 * More epoch columns appear only if some record trained longer. Metric cells
 * of a failed record hold the word `error`.
 */
inline void write_csv(std::ostream &out, const std::vector<RunRecord> &records) {
    const std::size_t epochs = detail::max_epochs(records);
    out << "dataset,encoding,axis,N,M";
    for (std::size_t e = 1; e <= epochs; ++e) out << ",ep" << e;
    out << ",test,f1,seed,wall_time_s\n";
    for (const auto &r : records) {
        out << r.dataset << ',' << r.encoding << ',' << r.axis.value_or("") << ',' << r.num_features
            << ',' << r.num_layers;
        for (std::size_t e = 0; e < epochs; ++e) {
            out << ',';
            if (!r.ok()) out << "error";
            else if (e < r.epoch_accuracies.size()) out << detail::format_double(r.epoch_accuracies[e]);
        }
        if (r.ok()) {
            out << ',' << detail::format_double(r.test_accuracy) << ',' << detail::format_double(r.f1);
        } else {
            out << ",error,error";
        }
        out << ',' << r.seed << ',' << detail::format_double(r.wall_time_s) << '\n';
    }
}

inline nlohmann::json to_json(const RunRecord &r) {
    nlohmann::json j{{"dataset", r.dataset},
                     {"encoding", r.encoding},
                     {"axis", r.axis ? nlohmann::json(*r.axis) : nlohmann::json(nullptr)},
                     {"N", r.num_features},
                     {"M", r.num_layers},
                     {"ep_accuracies", r.epoch_accuracies},
                     {"test", r.test_accuracy},
                     {"f1", r.f1},
                     {"seed", r.seed},
                     {"wall_time_s", r.wall_time_s},
                     {"test_predictions", r.test_predictions},
                     {"test_labels", r.test_labels}};
    j["error"] = r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr);
    return j;
}

inline RunRecord record_from_json(const nlohmann::json &j) {
    RunRecord r;
    j.at("dataset").get_to(r.dataset);
    j.at("encoding").get_to(r.encoding);
    if (!j.at("axis").is_null()) r.axis = j.at("axis").get<std::string>();
    j.at("N").get_to(r.num_features);
    j.at("M").get_to(r.num_layers);
    j.at("ep_accuracies").get_to(r.epoch_accuracies);
    j.at("test").get_to(r.test_accuracy);
    j.at("f1").get_to(r.f1);
    j.at("seed").get_to(r.seed);
    j.at("wall_time_s").get_to(r.wall_time_s);
    j.at("test_predictions").get_to(r.test_predictions);
    j.at("test_labels").get_to(r.test_labels);
    if (j.contains("error") && !j.at("error").is_null()) r.error = j.at("error").get<std::string>();
    return r;
}

inline void write_json(std::ostream &out, const std::vector<RunRecord> &records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &r : records) arr.push_back(to_json(r));
    out << nlohmann::json{{"records", arr}}.dump(2) << '\n';
}

inline std::vector<RunRecord> read_json(std::istream &in) {
    const nlohmann::json doc = nlohmann::json::parse(in);
    std::vector<RunRecord> out;
    for (const auto &j : doc.at("records")) out.push_back(record_from_json(j));
    return out;
}

inline std::string record_display_name(const RunRecord &r) {
    std::string name(r.encoding);
    if (auto kind = parse_encoding_kind(r.encoding)) name = std::string(encoding_display_name(*kind));
    if (r.axis) name += *r.axis == "y" ? " (RY)" : " (RX)";
    return name;
}

/**
 * One table per dataset; rows are grouped by (N, M) model in first-seen
 * order. Within each group the best F1 is bolded.
 */
inline void write_markdown(std::ostream &out, const std::vector<RunRecord> &records) {
    const std::size_t epochs = detail::max_epochs(records);
    std::vector<std::string> datasets;
    for (const auto &r : records) {
        if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) {
            datasets.push_back(r.dataset);
        }
    }
    bool first_table = true;
    for (const auto &ds : datasets) {
        if (!first_table) out << '\n';
        first_table = false;
        out << "### " << ds << "\n\n| Models | Encodings |";
        for (std::size_t e = 1; e <= epochs; ++e) out << " ep" << e << " |";
        out << " test | F1-score |\n|---|---|";
        for (std::size_t e = 0; e < epochs + 2; ++e) out << "---|";
        out << '\n';

        std::vector<std::pair<std::size_t, std::size_t>> models;
        for (const auto &r : records) {
            if (r.dataset != ds) continue;
            const std::pair key{r.num_features, r.num_layers};
            if (std::find(models.begin(), models.end(), key) == models.end()) models.push_back(key);
        }
        for (const auto &[n, m] : models) {
            std::vector<const RunRecord *> group;
            for (const auto &r : records) {
                if (r.dataset == ds && r.num_features == n && r.num_layers == m) group.push_back(&r);
            }
            double best = -1.0;
            for (const auto *r : group) {
                if (r->ok()) best = std::max(best, r->f1);
            }
            bool first_row = true;
            for (const auto *r : group) {
                out << "| ";
                if (first_row) out << "**(" << n << "F, " << m << "L)**";
                first_row = false;
                out << " | " << record_display_name(*r) << " |";
                if (!r->ok()) {
                    for (std::size_t e = 0; e < epochs + 2; ++e) out << " error |";
                    out << '\n';
                    continue;
                }
                for (std::size_t e = 0; e < epochs; ++e) {
                    out << ' ' << (e < r->epoch_accuracies.size() ? detail::fixed4(r->epoch_accuracies[e]) : "")
                        << " |";
                }
                out << ' ' << detail::fixed4(r->test_accuracy) << " | ";
                if (r->f1 == best) out << "**" << detail::fixed4(r->f1) << "**";
                else out << detail::fixed4(r->f1);
                out << " |\n";
            }
        }
        for (const auto &r : records) {
            if (r.dataset == ds && r.error) {
                out << "\n> error in " << record_display_name(r) << " (" << r.num_features << "F, "
                    << r.num_layers << "L): " << *r.error << '\n';
            }
        }
    }
}

inline void write_results(std::ostream &out, const std::vector<RunRecord> &records, ResultFormat format) {
    switch (format) {
    case ResultFormat::Csv: write_csv(out, records); break;
    case ResultFormat::Json: write_json(out, records); break;
    case ResultFormat::Markdown: write_markdown(out, records); break;
    }
}

/// Writes `records` to `path` in `format`.
inline void emit_results(const std::vector<RunRecord> &records, ResultFormat format,
                         const std::filesystem::path &path) {
    if (records.empty()) throw InputError("no records to emit");
    std::ofstream out(path);
    if (!out) throw OutputError("cannot open " + path.string() + " for writing");
    write_results(out, records, format);
    out.flush();
    if (!out) throw OutputError("failed writing " + path.string());
}

/// Test accuracy and F1 recomputed from the stored predictions.
inline std::pair<double, double> recompute_metrics(const RunRecord &r) {
    return {accuracy(r.test_predictions, r.test_labels), f1_score(r.test_predictions, r.test_labels)};
}

} // namespace qembed
