#include "jacobi/types.hpp"

namespace jacobi {

const char* to_string(RepresentationId rep) {
  switch (rep) {
    case RepresentationId::kRep1: return "rep1";
    case RepresentationId::kRep2: return "rep2";
    case RepresentationId::kRep3: return "rep3";
    case RepresentationId::kRep4: return "rep4";
    case RepresentationId::kAuto: return "auto";
  }
  return "unknown";
}

}  // namespace jacobi
