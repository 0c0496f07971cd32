#pragma once

#include <stdexcept>
#include <string>

namespace cellpipe {

// Base class for all recoverable pipeline errors. The CLI maps these to
// exit code 2 (data error); anything else is a bug.
class PipelineError : public std::runtime_error {
public:
    explicit PipelineError(const std::string& msg) : std::runtime_error(msg) {}
};

#define CELLPIPE_ERROR(Name)                                                   \
    class Name : public PipelineError {                                        \
    public:                                                                    \
        explicit Name(const std::string& msg) : PipelineError(#Name ": " + msg) {} \
    }

// stack I/O
CELLPIPE_ERROR(BadMagic);
CELLPIPE_ERROR(TruncatedPayload);
CELLPIPE_ERROR(UnknownDtype);
CELLPIPE_ERROR(NonPositiveSpacing);
CELLPIPE_ERROR(NonFiniteData);
CELLPIPE_ERROR(IoFailure);

// equivariant convolution
CELLPIPE_ERROR(NonCubicGrid);
CELLPIPE_ERROR(KernelTooLarge);
CELLPIPE_ERROR(ShapeMismatch);
CELLPIPE_ERROR(BadWeightsFile);

// watershed
CELLPIPE_ERROR(NoSeedsFound);
CELLPIPE_ERROR(GeometryMismatch);
CELLPIPE_ERROR(EmptySeeds);

// crf
CELLPIPE_ERROR(TooLargeForExactEnergy);

// cell graph / features
CELLPIPE_ERROR(LabelMissing);
CELLPIPE_ERROR(IsolatedVertex);
CELLPIPE_ERROR(NotAdjacent);

// tracking / metrics
CELLPIPE_ERROR(EmptySequence);
CELLPIPE_ERROR(EmptyPolyline);
CELLPIPE_ERROR(ZeroLengthGroundTruth);
CELLPIPE_ERROR(EmptyGroundTruth);
CELLPIPE_ERROR(EmptyGroundTruthGraph);

// synth
CELLPIPE_ERROR(SeedsTooCrowded);

// config / CLI
CELLPIPE_ERROR(ConfigError);

#undef CELLPIPE_ERROR

}  // namespace cellpipe
