#include "relcheck/error.hpp"

namespace relcheck {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateTerm: return "DuplicateTerm";
    case ErrorCode::AliasCollision: return "AliasCollision";
    case ErrorCode::UnknownTerm: return "UnknownTerm";
    case ErrorCode::EmptyTerm: return "EmptyTerm";
    case ErrorCode::EndpointError: return "EndpointError";
    case ErrorCode::CacheCorruption: return "CacheCorruption";
    case ErrorCode::NodeUniverseMismatch: return "NodeUniverseMismatch";
    case ErrorCode::PartitionDomainMismatch: return "PartitionDomainMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyReference: return "EmptyReference";
    case ErrorCode::InvalidParam: return "InvalidParam";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace relcheck
