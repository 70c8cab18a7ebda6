#include "advsac/io/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "advsac/errors.hpp"

namespace advsac::io {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

double parse_double(const std::string& field) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') {
    throw IoError("csv: cannot parse number from '" + field + "'");
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string episode_to_csv(const env::EpisodeRecord& episode) {
  if (episode.transitions.empty()) throw DomainError("episode_to_csv: empty episode");
  const size_t sd = episode.transitions.front().state.size();
  const size_t ad = episode.transitions.front().action.size();
  const bool has_goal = episode.transitions.front().goal.has_value();
  const size_t gd = has_goal ? episode.transitions.front().goal->size() : 0;

  std::ostringstream out;
  out << "step";
  for (size_t i = 0; i < sd; ++i) out << ",s" << i;
  for (size_t i = 0; i < ad; ++i) out << ",a" << i;
  out << ",reward,done,success";
  for (size_t i = 0; i < sd; ++i) out << ",ns" << i;
  for (size_t i = 0; i < gd; ++i) out << ",g" << i;
  out << "\n";

  for (size_t t = 0; t < episode.transitions.size(); ++t) {
    const env::Transition& tr = episode.transitions[t];
    out << tr.step_index;
    for (double v : tr.state) out << ',' << format_double(v);
    for (double v : tr.action) out << ',' << format_double(v);
    out << ',' << format_double(tr.reward);
    out << ',' << (tr.done ? 1 : 0);
    out << ',' << (t < episode.step_success.size() && episode.step_success[t] ? 1 : 0);
    for (double v : tr.next_state) out << ',' << format_double(v);
    if (has_goal) {
      for (double v : *tr.goal) out << ',' << format_double(v);
    }
    out << "\n";
  }
  return out.str();
}

void write_episode_csv(const std::string& path, const env::EpisodeRecord& episode) {
  write_file(path, episode_to_csv(episode));
}

env::EpisodeRecord parse_episode_csv_text(const std::string& text, double gamma) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("episode csv: missing header");
  const std::vector<std::string> header = split_csv_line(line);

  size_t sd = 0, ad = 0, gd = 0;
  for (const std::string& h : header) {
    if (h.size() >= 2 && h[0] == 's' && h != "step" && h != "success" && isdigit(h[1])) ++sd;
    else if (h.size() >= 2 && h[0] == 'a' && isdigit(h[1])) ++ad;
    else if (h.size() >= 2 && h[0] == 'g' && isdigit(h[1])) ++gd;
  }
  const size_t expected = 1 + sd + ad + 3 + sd + gd;
  if (header.size() != expected) {
    throw IoError("episode csv: unexpected header layout");
  }

  env::EpisodeRecord episode;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != expected) throw IoError("episode csv: bad row width");
    env::Transition tr;
    size_t col = 0;
    tr.step_index = static_cast<int>(parse_double(f[col++]));
    tr.state.resize(sd);
    for (size_t i = 0; i < sd; ++i) tr.state[i] = parse_double(f[col++]);
    tr.action.resize(ad);
    for (size_t i = 0; i < ad; ++i) tr.action[i] = parse_double(f[col++]);
    tr.reward = parse_double(f[col++]);
    tr.done = parse_double(f[col++]) != 0.0;
    const bool success = parse_double(f[col++]) != 0.0;
    tr.next_state.resize(sd);
    for (size_t i = 0; i < sd; ++i) tr.next_state[i] = parse_double(f[col++]);
    if (gd > 0) {
      std::vector<double> goal(gd);
      for (size_t i = 0; i < gd; ++i) goal[i] = parse_double(f[col++]);
      tr.goal = std::move(goal);
    }
    episode.transitions.push_back(std::move(tr));
    episode.step_success.push_back(success ? 1 : 0);
  }
  if (episode.transitions.empty()) throw IoError("episode csv: no rows");
  episode.success = episode.step_success.back() != 0;
  episode.undiscounted_return = 0.0;
  for (const env::Transition& t : episode.transitions) episode.undiscounted_return += t.reward;
  episode.discounted_return = env::discounted_return(episode, gamma);
  return episode;
}

env::EpisodeRecord read_episode_csv(const std::string& path, double gamma) {
  return parse_episode_csv_text(read_file(path), gamma);
}

}  // namespace advsac::io
