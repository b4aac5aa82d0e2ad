#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pitchgraph/ingest/records.hpp"

namespace pitchgraph::ingest {

inline constexpr std::string_view kLabelsFileName = "Labels-v2.json";
inline constexpr std::string_view kCaptionsFileName = "Labels-caption.json";

// Parses a labels file. One annotation per entry of the "annotations"
// array, in file order. Throws SchemaError / ValueError.
std::vector<EventAnnotation> parse_labels_file(std::string_view bytes, const std::string& game_id);

// Parses a captions file into the game record and both lineups.
// `league` and `season` fill in fields absent from the file body.
std::pair<GameRecord, std::vector<PlayerEntry>> parse_captions_file(
    std::string_view bytes, const std::string& game_id, std::string_view league = {},
    std::string_view season = {});

std::string serialize_labels(std::span<const EventAnnotation> events);
std::string serialize_captions(const GameRecord& game, std::span<const PlayerEntry> players);

// "1 - 07:32" -> {1, 452}. Throws ValueError.
std::pair<int, int> parse_game_time(std::string_view text);

// "2014-15", "2014/2015", "14-15", "15-2016" -> "2014-2015" / "2015-2016".
// nullopt when the text is not a recognisable season.
std::optional<std::string> canonical_season(std::string_view text);
[[nodiscard]] bool is_canonical_season(std::string_view text);

// Trim, collapse internal whitespace, NFC-normalize. Total.
std::string normalize_name(std::string_view raw);

// Walks `root` for league/season/game directories holding both source
// files. Game ids are the relative directory paths; traversal is sorted.
Dataset load_dataset(const std::filesystem::path& root);

}  // namespace pitchgraph::ingest
