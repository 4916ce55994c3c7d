// Copyright 2026 The qcrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcrit/error.h"
#include "qcrit/experiments.h"

namespace {

using nlohmann::json;

json load_params(const std::string &text) {
    if (text.empty()) {
        return json::object();
    }
    std::string body = text;
    std::error_code ec;
    if (std::filesystem::is_regular_file(text, ec)) {
        std::ifstream f(text);
        std::stringstream ss;
        ss << f.rdbuf();
        body = ss.str();
    }
    try {
        return json::parse(body);
    } catch (const json::exception &ex) {
        throw qcrit::Error(qcrit::ErrorCode::ParseError, std::string("--params: ") + ex.what());
    }
}

void emit(const std::string &out_path, const std::string &text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        throw qcrit::Error(qcrit::ErrorCode::ParseError, "cannot write '" + out_path + "'");
    }
    f << text;
}

int run(const std::string &experiment, const std::string &params_text, uint64_t seed, const std::string &out,
        const std::string &format, bool timing) {
    json params = load_params(params_text);
    if (experiment == "sweep") {
        std::string target = params.value("target", "");
        unsigned threads = params.value("threads", 0u);
        json grid = params.contains("grid") ? params.at("grid") : json::object();
        json fixed = params.contains("fixed") ? params.at("fixed") : json::object();
        emit(out, qcrit::run_sweep_csv(target, grid, fixed, seed, threads));
        return 0;
    }
    qcrit::ExperimentReport r = qcrit::run_experiment(experiment, params, seed);
    if (format == "json") {
        emit(out, timing ? qcrit::to_json(r, true).dump(2) + "\n" : qcrit::canonical_json(r));
    } else if (format == "csv") {
        emit(out, qcrit::report_to_csv(r));
    } else {
        emit(out, qcrit::report_to_markdown(r));
    }
    return qcrit::verdicts_ok(r) ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Trace-distance criterion experiments"};
    std::string experiment;
    std::string params;
    uint64_t seed = 0;
    std::string out;
    std::string format = "json";
    bool timing = false;
    bool list = false;
    app.add_option("--experiment,-e", experiment, "Experiment name, or 'sweep'");
    app.add_option("--params,-p", params, "Parameters as a JSON string or a path to a JSON file");
    app.add_option("--seed,-s", seed, "64-bit seed");
    app.add_option("--out,-o", out, "Output path (default stdout)");
    app.add_option("--format,-f", format, "Report format")->check(CLI::IsMember({"json", "csv", "md"}));
    app.add_flag("--timing", timing, "Include elapsed_ms in JSON output");
    app.add_flag("--list", list, "List experiments and exit");
    app.set_version_flag("--version", std::string(qcrit::version()));
    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const auto &name : qcrit::experiment_names()) {
            std::cout << name << "\n";
        }
        std::cout << "sweep\n";
        return 0;
    }
    if (experiment.empty()) {
        std::cerr << "error: --experiment is required\n";
        return 2;
    }
    try {
        return run(experiment, params, seed, out, format, timing);
    } catch (const std::exception &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
