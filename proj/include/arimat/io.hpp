#pragma once

#include <iosfwd>
#include <string>

#include "arimat/arimat.hpp"
#include "arimat/decompose.hpp"
#include "arimat/gpcheck.hpp"
#include "arimat/matroid.hpp"
#include "arimat/plucker.hpp"

namespace arimat::io {

using exactmat::Matrix;
using exactmat::PluckerVector;

// All formats are JSON documents with exact scalars rendered as strings
// ("num" or "num/den"), so arbitrary precision survives round-trips.

Matrix parse_matrix(const std::string& text);
ari::GroupList parse_group_list(const std::string& text);
ari::MultiplicityTable parse_table(const std::string& text);
ari::LabelledGraph parse_labelled_graph(const std::string& text);
PluckerVector parse_plucker(const std::string& text);

std::string serialize(const Matrix& m);
std::string serialize(const ari::GroupList& gl);
std::string serialize(const ari::MultiplicityTable& t);
std::string serialize(const ari::LabelledGraph& g);
std::string serialize(const PluckerVector& pv);
std::string serialize(const decompose::TADFactorization& f);
std::string serialize(const decompose::CounterexamplePair& c);
std::string serialize(const matroid::U24Witness& w);
std::string serialize(const gpcheck::GPrWitness& w);
std::string serialize(const gpcheck::GPrReport& r);
std::string serialize(const ari::AxiomReport& r);
std::string serialize(const std::vector<ari::GcdViolation>& v);
std::string serialize(const ari::Classification& c);
std::string serialize(const plucker::IdealGenerators& g);

}  // namespace arimat::io
