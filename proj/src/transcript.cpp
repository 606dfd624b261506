#include "lcis/transcript.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace lcis {

std::vector<std::size_t> Transcript::solution_sizes() const {
  std::vector<std::size_t> sizes{0};
  sizes.reserve(rounds.size() + 1);
  for (const auto& round : rounds) {
    sizes.push_back(sizes.back() + (round.added ? 1 : 0));
  }
  return sizes;
}

std::vector<Vertex> Transcript::processed(int side, int t) const {
  std::vector<Vertex> out;
  for (int r = 0; r < t && r < order(); ++r) {
    out.push_back(side == 1 ? rounds[r].v1 : rounds[r].v2);
  }
  return out;
}

Solution Transcript::solution_after(int t) const {
  Solution out;
  for (int r = 0; r < t && r < order(); ++r) {
    if (const auto& added = rounds[r].added) {
      out.s1.push_back(added->v1);
      out.s2.push_back(added->v2);
    }
  }
  return out;
}

namespace {

std::string bits_to_string(const Bitset& bits) {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits.test(i)) {
      out[i] = '1';
    }
  }
  return out;
}

Bitset string_to_bits(const std::string& text, std::size_t line) {
  Bitset bits(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits.set(i);
    } else if (text[i] != '0') {
      throw std::runtime_error("transcript line " + std::to_string(line) + ": bad reveal string");
    }
  }
  return bits;
}

}  // namespace

void write_transcript(std::ostream& out, const Transcript& transcript) {
  for (std::size_t r = 0; r < transcript.rounds.size(); ++r) {
    const auto& round = transcript.rounds[r];
    nlohmann::ordered_json record;
    record["t"] = r + 1;
    record["v1"] = round.v1;
    record["v2"] = round.v2;
    record["reveal1"] = bits_to_string(round.revealed1);
    record["reveal2"] = bits_to_string(round.revealed2);
    if (round.added) {
      record["add"] = {round.added->v1, round.added->v2};
    } else {
      record["add"] = nullptr;
    }
    out << record.dump() << '\n';
  }
}

Transcript read_transcript(std::istream& in) {
  Transcript transcript;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      const auto record = nlohmann::json::parse(line);
      if (record.at("t").get<std::size_t>() != transcript.rounds.size() + 1) {
        throw std::runtime_error("rounds out of sequence");
      }
      Round round;
      round.v1 = record.at("v1").get<Vertex>();
      round.v2 = record.at("v2").get<Vertex>();
      round.revealed1 = string_to_bits(record.at("reveal1").get<std::string>(), line_no);
      round.revealed2 = string_to_bits(record.at("reveal2").get<std::string>(), line_no);
      const auto& add = record.at("add");
      if (!add.is_null()) {
        if (!add.is_array() || add.size() != 2) {
          throw std::runtime_error("add must be null or a pair");
        }
        round.added = Addition{add[0].get<Vertex>(), add[1].get<Vertex>()};
      }
      transcript.rounds.push_back(std::move(round));
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("transcript line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::runtime_error& e) {
      const std::string what = e.what();
      if (what.rfind("transcript line", 0) == 0) {
        throw;
      }
      throw std::runtime_error("transcript line " + std::to_string(line_no) + ": " + what);
    }
  }
  return transcript;
}

}  // namespace lcis
