#pragma once

#include "indmorse/complex.hpp"
#include "indmorse/complex_io.hpp"
#include "indmorse/errors.hpp"
#include "indmorse/face.hpp"
#include "indmorse/families.hpp"
#include "indmorse/graph.hpp"
#include "indmorse/graph_algorithms.hpp"
#include "indmorse/homology/homology.hpp"
#include "indmorse/morse/e_script.hpp"
#include "indmorse/morse/lemma_scripts.hpp"
#include "indmorse/morse/matching.hpp"
#include "indmorse/morse/matching_tree.hpp"
#include "indmorse/morse/morse_io.hpp"
#include "indmorse/morse/patchwork.hpp"
#include "indmorse/morse/search.hpp"
#include "indmorse/morse/sg2k.hpp"
#include "indmorse/sg2_faces.hpp"
#include "indmorse/text_io.hpp"
#include "indmorse/theorems/predictions.hpp"
#include "indmorse/theorems/reports.hpp"
#include "indmorse/theorems/verify.hpp"
