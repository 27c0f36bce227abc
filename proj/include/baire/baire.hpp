#ifndef BAIRE_BAIRE_HPP
#define BAIRE_BAIRE_HPP

#include "baire/numerics.hpp"
#include "baire/letter.hpp"
#include "baire/words.hpp"
#include "baire/spaces.hpp"
#include "baire/hexpr.hpp"
#include "baire/recurrences.hpp"
#include "baire/sampling.hpp"
#include "baire/analysis.hpp"
#include "baire/report.hpp"
#include "baire/cli.hpp"

#endif
