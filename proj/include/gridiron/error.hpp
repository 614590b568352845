#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridiron {

enum class ErrorCode {
  // core_data
  MalformedRow,
  DuplicateGameId,
  MissingColumn,
  NonMonotonePlayIndex,
  UnknownEnumValue,
  OrphanPlay,
  MissingPlays,
  IoError,
  InvalidDataset,
  // stats_kit
  LengthMismatch,
  ZeroVariance,
  InvalidCounts,
  EmptySample,
  BadEdges,
  ConstantColumn,
  ConstantX,
  TooFewRows,
  // decision_lab
  NoPlays,
  NoDrives,
  OutOfRange,
  CurveGap,
  SingleSeason,
  // ranking
  NoGames,
  NonConvergence,
  UnknownTeam,
  // bt_model
  MissingStats,
  MissingRankSnapshot,
  Separation,
  Collinearity,
  UnfittedModel,
  // fpm_engine
  NoHistory,
  EmptyMatrix,
  DegenerateSampleSize,
  BadParams,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateGameId: return "DuplicateGameId";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::NonMonotonePlayIndex: return "NonMonotonePlayIndex";
    case ErrorCode::UnknownEnumValue: return "UnknownEnumValue";
    case ErrorCode::OrphanPlay: return "OrphanPlay";
    case ErrorCode::MissingPlays: return "MissingPlays";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidDataset: return "InvalidDataset";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::InvalidCounts: return "InvalidCounts";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::BadEdges: return "BadEdges";
    case ErrorCode::ConstantColumn: return "ConstantColumn";
    case ErrorCode::ConstantX: return "ConstantX";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::NoPlays: return "NoPlays";
    case ErrorCode::NoDrives: return "NoDrives";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::CurveGap: return "CurveGap";
    case ErrorCode::SingleSeason: return "SingleSeason";
    case ErrorCode::NoGames: return "NoGames";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::UnknownTeam: return "UnknownTeam";
    case ErrorCode::MissingStats: return "MissingStats";
    case ErrorCode::MissingRankSnapshot: return "MissingRankSnapshot";
    case ErrorCode::Separation: return "Separation";
    case ErrorCode::Collinearity: return "Collinearity";
    case ErrorCode::UnfittedModel: return "UnfittedModel";
    case ErrorCode::NoHistory: return "NoHistory";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::DegenerateSampleSize: return "DegenerateSampleSize";
    case ErrorCode::BadParams: return "BadParams";
  }
  return "Unknown";
}

// All library failures surface as this exception; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gridiron
