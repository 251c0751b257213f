// Generated by tests/oracle/oracle.py --emit; do not edit by hand.
#pragma once

namespace oracle {
inline constexpr double kDvA = 1.6931471805599454;
inline constexpr double kDvB = 1.0;
inline constexpr double kPvTwoDocs = 0.7071067811865476;
inline constexpr double kQvT1 = 0.8610369959439764;
inline constexpr double kQvT2 = 0.5085423203783267;
inline constexpr double kRelevanceDvQv = 1.6931471805599454;
inline constexpr double kTpvMerged = 0.7071067811865475;
inline constexpr double kPvAfterIngest = 0.7071067811865476;
inline constexpr double kLocalMatchCount = 1.0;
inline constexpr double kLocalMatchScore = 1.6931471805599454;
inline constexpr double kCcSingleNode = 0.3333333333333333;
inline constexpr double kCcTwoTriangles = 0.8666666666666666;
inline constexpr double kDownload0Doc = 10.0;
inline constexpr double kDownload1Doc = 20.0;
inline constexpr double kDownload2Doc = 11.0;
inline constexpr double kDownload3Doc = 21.0;
inline constexpr double kDownload4Doc = 12.0;
inline constexpr double kDownloadDropped = 22.0;
inline constexpr double kCcRnd400 = 0.09523809523809523;
inline constexpr double kAplRnd400 = 1.6470990057754815;
inline constexpr double kCcRnd600 = 0.04012799109627156;
inline constexpr double kAplRnd600 = 2.0118785391283187;
inline constexpr double kCcRnd800 = 0.022923967459324155;
inline constexpr double kAplRnd800 = 2.29886437638095;
inline constexpr double kCcRnd1000 = 0.014443443443443444;
inline constexpr double kAplRnd1000 = 2.5879108274313585;
inline constexpr double kCcRnd3000 = 0.0017735911970656886;
inline constexpr double kAplRnd3000 = 4.790545032706499;
inline constexpr double kCcRnd5000 = 0.0007961992398479695;
inline constexpr double kAplRnd5000 = 6.1659273543063255;
inline constexpr double kAggSuccess = 0.7;
inline constexpr double kAggLinks = 3.0;
inline constexpr double kAggDocs = 1.8;
inline constexpr double kAggDeepness = 2.4285714285714284;
inline constexpr double kAggApl = 2.8333333333333335;
}  // namespace oracle
