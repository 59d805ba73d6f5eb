#pragma once

#include <aqc/classify/dodecacode.hpp>
#include <aqc/classify/doob.hpp>
#include <aqc/classify/extend.hpp>
#include <aqc/classify/hamming.hpp>
#include <aqc/classify/lift.hpp>
