#include "galilei/error.hpp"

namespace galilei {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptySample: return "EmptySample";
        case ErrorCode::IncompatibleBoost: return "IncompatibleBoost";
        case ErrorCode::IncompatibleRotation: return "IncompatibleRotation";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::StructureMismatch: return "StructureMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::PhaseWrap: return "PhaseWrap";
        case ErrorCode::UnknownPath: return "UnknownPath";
        case ErrorCode::UnroutedPath: return "UnroutedPath";
        case ErrorCode::UnknownTransition: return "UnknownTransition";
        case ErrorCode::EmptyScreen: return "EmptyScreen";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace galilei
