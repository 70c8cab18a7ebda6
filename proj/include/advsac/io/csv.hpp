#pragma once

#include <string>
#include <vector>

#include "advsac/env/types.hpp"

namespace advsac::io {

// Shortest round-trip-exact decimal form of a double ("%.17g"). All CSV
// output flows through this so files are byte-stable and parse back exactly.
std::string format_double(double v);

// Line-oriented episode format: one row per step with columns
//   step, s0..s{n-1}, a0..a{m-1}, reward, done, success, ns0..ns{n-1}
// plus g0..g{k-1} appended for goal-conditioned episodes. Column counts are
// taken from the header on parse.
std::string episode_to_csv(const env::EpisodeRecord& episode);
void write_episode_csv(const std::string& path, const env::EpisodeRecord& episode);

// Rebuilds transitions and success flags; returns are recomputed (discounted
// with the given gamma).
env::EpisodeRecord parse_episode_csv_text(const std::string& text, double gamma);
env::EpisodeRecord read_episode_csv(const std::string& path, double gamma);

std::vector<std::string> split_csv_line(const std::string& line);
double parse_double(const std::string& field);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace advsac::io
