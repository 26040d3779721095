#ifndef PHORMA_PHORMA_HPP
#define PHORMA_PHORMA_HPP

// Umbrella header: compile bounded, order-restricted, composition-constrained
// integer sequence families into a compact path-counting index supporting
// count / rank / unrank / next / sample.

#include "phorma/boolexpr.hpp"
#include "phorma/builtins.hpp"
#include "phorma/compositions.hpp"
#include "phorma/error.hpp"
#include "phorma/hfamily.hpp"
#include "phorma/index.hpp"
#include "phorma/oracle.hpp"
#include "phorma/redgen.hpp"
#include "phorma/seq.hpp"
#include "phorma/seqcore.hpp"
#include "phorma/specio.hpp"

#endif  // PHORMA_PHORMA_HPP
