#ifndef URS_URS_HPP_
#define URS_URS_HPP_

// Umbrella header.
#include "urs/attacks.hpp"
#include "urs/bytes.hpp"
#include "urs/curve.hpp"
#include "urs/dleq.hpp"
#include "urs/errors.hpp"
#include "urs/field.hpp"
#include "urs/hash_to_curve.hpp"
#include "urs/mixer.hpp"
#include "urs/ring.hpp"
#include "urs/rng.hpp"
#include "urs/scheme.hpp"
#include "urs/signature_codec.hpp"

#endif  // URS_URS_HPP_
