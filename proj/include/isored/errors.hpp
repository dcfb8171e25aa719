#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace isored {

// Base class for every error the library raises. name() is stable and is what
// the CLI puts into its error payloads, so subclasses must not rename themselves.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual const char* name() const noexcept = 0;
};

#define ISORED_ERROR(NAME)                                                   \
    class NAME : public Error {                                              \
    public:                                                                  \
        explicit NAME(const std::string& msg = #NAME) : Error(msg) {}        \
        const char* name() const noexcept override { return #NAME; }         \
    };

// rational function field
ISORED_ERROR(ZeroDenominator)
ISORED_ERROR(DivisionByZeroElement)
ISORED_ERROR(UndefinedDegree)
ISORED_ERROR(PoleAtPoint)
ISORED_ERROR(BothZero)
ISORED_ERROR(ZeroPolynomial)

// graphs
ISORED_ERROR(DuplicateEdge)
ISORED_ERROR(ZeroWeightEdge)
ISORED_ERROR(BadIndex)
ISORED_ERROR(EmptySet)
ISORED_ERROR(NotStructural)

// reductions
ISORED_ERROR(InteriorLoopEqualsLambda)
ISORED_ERROR(ComplementNotTriangulable)
ISORED_ERROR(SingularDiagonal)
ISORED_ERROR(NotNested)
ISORED_ERROR(NotInGpi)
ISORED_ERROR(EmptyTarget)

// spectra
ISORED_ERROR(EmptyGraph)
ISORED_ERROR(NonFinite)
ISORED_ERROR(CrossCheckDisagreement)

// expansions
ISORED_ERROR(UncoveredVertex)
ISORED_ERROR(NotSt0)
ISORED_ERROR(SizeMismatch)
ISORED_ERROR(TooLarge)

// dynamical networks
ISORED_ERROR(MissingLipschitz)
ISORED_ERROR(NonDifferentiableComponent)
ISORED_ERROR(BadInitialState)

// documents and I/O
ISORED_ERROR(BadDocument)
ISORED_ERROR(IoError)
ISORED_ERROR(Unsupported)

#undef ISORED_ERROR

// Sequential reduction failure; keeps the index of the offending step.
class StepNotStructural : public Error {
public:
    std::size_t step;
    StepNotStructural(std::size_t step_index, const std::string& why)
        : Error("step " + std::to_string(step_index) + " is not structural: " + why),
          step(step_index) {}
    const char* name() const noexcept override { return "StepNotStructural"; }
};

// Trajectory left the domain box; reports when and where.
class DomainEscape : public Error {
public:
    long step;
    int coordinate;
    DomainEscape(long at_step, int coord, const std::string& label)
        : Error("state left the domain box at step " + std::to_string(at_step) +
                ", coordinate " + label),
          step(at_step), coordinate(coord) {}
    const char* name() const noexcept override { return "DomainEscape"; }
};

// Weight-expression syntax error with position and the tokens that would have
// been accepted there.
class ParseError : public Error {
public:
    std::size_t position;
    std::vector<std::string> expected;
    ParseError(std::size_t pos, std::vector<std::string> expect)
        : Error(compose(pos, expect)), position(pos), expected(std::move(expect)) {}
    const char* name() const noexcept override { return "ParseError"; }

private:
    static std::string compose(std::size_t pos, const std::vector<std::string>& expect) {
        std::string s = "parse error at position " + std::to_string(pos);
        if (!expect.empty()) {
            s += ": expected ";
            for (std::size_t i = 0; i < expect.size(); ++i) {
                if (i) s += i + 1 == expect.size() ? " or " : ", ";
                s += expect[i];
            }
        }
        return s;
    }
};

} // namespace isored
