#pragma once

#include "qcore.hpp"
#include "eht.hpp"
#include "classify.hpp"
#include "weight.hpp"
#include "orth.hpp"
#include "families.hpp"
#include "report.hpp"
