#pragma once

#include <stdexcept>
#include <string>

namespace dc {

// Every domain failure derives from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define DC_DEFINE_ERROR(Name)                                         \
    class Name : public Error {                                       \
    public:                                                           \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    };

DC_DEFINE_ERROR(SyntaxError)
DC_DEFINE_ERROR(NonSquareFreeD)
DC_DEFINE_ERROR(MixedDiscriminant)
DC_DEFINE_ERROR(DivisionByZero)
DC_DEFINE_ERROR(NotACycle)
DC_DEFINE_ERROR(InvalidTree)
DC_DEFINE_ERROR(VertexBudgetExceeded)
DC_DEFINE_ERROR(ValidationFailed)
DC_DEFINE_ERROR(NotWellSlanted)
DC_DEFINE_ERROR(VerticalDiagonal)
DC_DEFINE_ERROR(NotBackwardApplicable)
DC_DEFINE_ERROR(EmptyMoveSet)
DC_DEFINE_ERROR(KeaneStopBeforeLimit)
DC_DEFINE_ERROR(ChartBudgetExceeded)
DC_DEFINE_ERROR(NotASaddleConnection)
DC_DEFINE_ERROR(HitsSingularityEarly)
DC_DEFINE_ERROR(OnEdge)
DC_DEFINE_ERROR(OnAxis)

#undef DC_DEFINE_ERROR

// An orbit reached a point where the map is undefined; step is the iterate index.
class HitsSingularity : public Error {
public:
    explicit HitsSingularity(const std::string& what, long step = -1)
        : Error("HitsSingularity: " + what), step_(step) {}
    long step() const { return step_; }

private:
    long step_;
};

}  // namespace dc
