#pragma once

#include "morseposet/classify.hpp"
#include "morseposet/errors.hpp"
#include "morseposet/geometry.hpp"
#include "morseposet/morse.hpp"
#include "morseposet/pointfile.hpp"
#include "morseposet/ratio.hpp"
#include "morseposet/rng.hpp"
#include "morseposet/sampling.hpp"
#include "morseposet/transitions.hpp"
