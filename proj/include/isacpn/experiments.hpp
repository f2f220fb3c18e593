// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace isacpn {

struct ExperimentOptions {
    std::optional<std::string> config_file;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> realizations;
    std::string out_dir = "results";
    std::size_t scale = 1;  // divides M and the realization count
    bool plots = false;
};

class CsvTable {
public:
    CsvTable(std::string experiment, std::string anchor, std::vector<std::string> columns);

    void meta(const std::string& key, const std::string& value);
    void row(std::vector<std::string> cells);
    void write(const std::string& path) const;
    std::size_t size() const { return rows_.size(); }

private:
    std::string experiment_, anchor_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

std::string fmt_num(double v);

std::vector<std::string> experiment_names();
std::string experiment_anchor(const std::string& name);

/// Runs the named experiment and returns the files it wrote.
std::vector<std::string> run_experiment(const std::string& name, const ExperimentOptions& opt);

/// Directory holding the shipped PSD data files.
std::string data_dir();

}  // namespace isacpn
