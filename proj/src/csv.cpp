#include "rewardlab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace rewardlab {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_text_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

void write_trajectory_csv(const trajectory& traj, const std::string& path) {
    const size_t n = traj.probs.empty() ? 0 : traj.probs.front().size();
    std::ostringstream os;
    os << "step,time";
    for (size_t y = 0; y < n; ++y) os << ",prob_" << y;
    os << ",v_proxy,v_truth,reward_variance_proxy\n";
    for (size_t k = 0; k < traj.size(); ++k) {
        os << traj.steps[k] << ',' << format_g17(traj.times[k]);
        for (size_t y = 0; y < n; ++y) os << ',' << format_g17(traj.probs[k][y]);
        os << ',' << format_g17(traj.v_proxy[k]) << ',' << format_g17(traj.v_truth[k]) << ','
           << format_g17(traj.reward_variance_proxy[k]) << '\n';
    }
    write_text_file_atomic(path, os.str());
}

trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory file " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty trajectory file");

    size_t n = 0;
    {
        std::istringstream hs(line);
        std::string col;
        std::vector<std::string> cols;
        while (std::getline(hs, col, ',')) cols.push_back(col);
        if (cols.size() < 5 || cols[0] != "step" || cols[1] != "time" ||
            cols[cols.size() - 3] != "v_proxy" || cols[cols.size() - 2] != "v_truth" ||
            cols.back() != "reward_variance_proxy")
            throw std::runtime_error(path + ": unexpected trajectory header");
        n = cols.size() - 5;
    }

    trajectory traj;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != n + 5)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": wrong field count");
        traj.steps.push_back(std::stoll(fields[0]));
        traj.times.push_back(std::stod(fields[1]));
        dvec p(n);
        for (size_t y = 0; y < n; ++y) p[y] = std::stod(fields[2 + y]);
        traj.probs.push_back(std::move(p));
        traj.v_proxy.push_back(std::stod(fields[n + 2]));
        traj.v_truth.push_back(std::stod(fields[n + 3]));
        traj.reward_variance_proxy.push_back(std::stod(fields[n + 4]));
    }
    if (!traj.steps.empty()) traj.total_steps = traj.steps.back();
    return traj;
}

}  // namespace rewardlab
