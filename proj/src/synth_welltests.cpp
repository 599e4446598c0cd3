#include "vfmcal/synth.hpp"

namespace vfmcal {

// Frozen benchmark well-test table. Generated once from seeded bounded
// random walks within per-well composition ranges and committed verbatim so
// the copy/random benchmarks are reproducible byte for byte.
const WellTestTable& default_welltest_table() {
    static const WellTestTable table = {
    {9, 6, 0.1943, 0.8414},
    {12, 3, 0.1517, 0.9788},
    {14, 3, 0.1513, 0.9800},
    {15, 5, 0.1659, 0.9673},
    {21, 3, 0.1556, 0.9708},
    {29, 5, 0.1691, 0.9605},
    {30, 5, 0.1645, 0.9618},
    {44, 0, 0.1309, 0.8841},
    {47, 8, 0.1426, 0.9624},
    {48, 1, 0.1435, 0.8554},
    {49, 1, 0.1503, 0.8536},
    {54, 4, 0.0861, 0.8991},
    {55, 2, 0.1559, 0.9609},
    {58, 4, 0.1153, 0.8754},
    {61, 5, 0.1639, 0.9709},
    {70, 3, 0.1543, 0.9745},
    {72, 6, 0.2496, 0.8784},
    {76, 2, 0.1490, 0.9742},
    {77, 5, 0.1592, 0.9635},
    {80, 1, 0.1455, 0.9207},
    {84, 4, 0.1362, 0.8778},
    {92, 9, 0.1559, 0.9854},
    {93, 9, 0.1561, 0.9612},
    {97, 3, 0.1548, 0.9755},
    {100, 1, 0.1473, 0.9382},
    {103, 5, 0.1611, 0.9635},
    {106, 9, 0.1492, 0.9484},
    {107, 4, 0.1243, 0.8938},
    {108, 0, 0.1305, 0.8756},
    {110, 6, 0.2795, 0.9493},
    {112, 8, 0.1448, 0.9851},
    {114, 5, 0.1594, 0.9724},
    {115, 0, 0.1335, 0.8961},
    {116, 4, 0.1176, 0.8625},
    {127, 8, 0.1467, 0.9785},
    {128, 3, 0.1510, 0.9751},
    {134, 1, 0.1516, 0.9794},
    {135, 2, 0.1514, 0.9957},
    {136, 3, 0.1520, 0.9747},
    {140, 1, 0.1520, 0.9148},
    {143, 8, 0.1464, 0.9171},
    {147, 3, 0.1571, 0.9768},
    {148, 5, 0.1580, 0.9623},
    {150, 5, 0.1515, 0.9667},
    {152, 9, 0.1526, 0.9376},
    {154, 4, 0.1242, 0.8810},
    {160, 5, 0.1599, 0.9717},
    {164, 1, 0.1507, 0.9017},
    {165, 9, 0.1514, 0.9493},
    {166, 6, 0.2760, 0.9688},
    {167, 9, 0.1529, 0.9720},
    {169, 0, 0.1305, 0.8870},
    {176, 3, 0.1592, 0.9820},
    {178, 6, 0.2894, 0.9500},
    {179, 9, 0.1536, 0.9302},
    {183, 0, 0.1309, 0.8764},
    {187, 0, 0.1323, 0.8951},
    {193, 8, 0.1490, 0.8924},
    {196, 6, 0.2733, 0.9613},
    {201, 4, 0.1130, 0.8992},
    {208, 4, 0.0977, 0.9445},
    {211, 4, 0.0997, 0.9159},
    {217, 9, 0.1573, 0.9088},
    {221, 8, 0.1477, 0.9023},
    {222, 6, 0.2880, 0.9525},
    {226, 9, 0.1567, 0.8719},
    {228, 3, 0.1579, 0.9799},
    {233, 8, 0.1485, 0.9111},
    {236, 4, 0.1270, 0.9186},
    {239, 1, 0.1509, 0.9863},
    {240, 9, 0.1594, 0.8793},
    {243, 3, 0.1583, 0.9868},
    {247, 2, 0.1448, 0.9907},
    {256, 3, 0.1559, 0.9904},
    {258, 0, 0.1316, 0.8895},
    {260, 9, 0.1570, 0.8894},
    {261, 9, 0.1581, 0.9371},
    {262, 3, 0.1529, 0.9916},
    {266, 4, 0.1335, 0.9153},
    {269, 3, 0.1505, 0.9826},
    {274, 2, 0.1417, 0.9898},
    {275, 2, 0.1418, 0.9917},
    {278, 2, 0.1452, 0.9999},
    {281, 4, 0.1455, 0.9142},
    {286, 1, 0.1510, 0.9491},
    {289, 3, 0.1502, 0.9872},
    {292, 8, 0.1500, 0.9832},
    {300, 3, 0.1528, 0.9852},
    {301, 9, 0.1564, 0.9640},
    {302, 9, 0.1531, 0.9786},
    {303, 8, 0.1463, 0.9743},
    {304, 1, 0.1502, 0.9277},
    {315, 1, 0.1530, 0.9923},
    {319, 5, 0.1673, 0.9743},
    {321, 9, 0.1600, 0.9824},
    {322, 2, 0.1437, 0.9954},
    {325, 3, 0.1501, 0.9840},
    {329, 9, 0.1534, 0.9541},
    {331, 5, 0.1647, 0.9635},
    {332, 9, 0.1436, 0.9504},
    {336, 8, 0.1449, 0.9693},
    {341, 8, 0.1410, 0.9283},
    {348, 1, 0.1579, 0.9888},
    {349, 9, 0.1409, 0.9205},
    {353, 5, 0.1658, 0.9648},
    {354, 0, 0.1362, 0.8807},
    {360, 8, 0.1405, 0.9634},
    {362, 3, 0.1501, 0.9824},
    {363, 9, 0.1463, 0.9378},
    {368, 9, 0.1452, 0.9050},
    {372, 3, 0.1525, 0.9930},
    {373, 8, 0.1415, 0.9420},
    {375, 7, 0.0899, 0.8497},
    {380, 2, 0.1545, 0.9910},
    {381, 6, 0.2808, 0.9472},
    {384, 8, 0.1426, 0.9469},
    {385, 8, 0.1408, 0.9309},
    {389, 7, 0.0861, 0.8457},
    {393, 4, 0.1498, 0.9149},
    {405, 9, 0.1512, 0.9005},
    {411, 3, 0.1533, 0.9910},
    {414, 3, 0.1563, 0.9990},
    {418, 8, 0.1404, 0.9147},
    {420, 2, 0.1591, 0.9889},
    {421, 7, 0.0794, 0.8342},
    {425, 2, 0.1679, 0.9929},
    {427, 7, 0.1009, 0.8538},
    {431, 9, 0.1461, 0.8830},
    {432, 3, 0.1513, 0.9980},
    {444, 1, 0.1527, 0.9918},
    {448, 7, 0.0724, 0.8157},
    {450, 6, 0.2644, 0.9612},
    {451, 2, 0.1667, 0.9840},
    {452, 7, 0.0645, 0.8211},
    {461, 0, 0.1359, 0.8907},
    {462, 6, 0.2368, 0.9269},
    {464, 9, 0.1496, 0.8735},
    {465, 0, 0.1328, 0.8892},
    {467, 6, 0.2285, 0.9042},
    {470, 9, 0.1425, 0.9100},
    {472, 3, 0.1524, 0.9990},
    {483, 5, 0.1693, 0.9699},
    {485, 6, 0.2013, 0.8591},
    {488, 7, 0.0872, 0.8363},
    {490, 1, 0.1599, 0.9855},
    {499, 1, 0.1544, 0.9685},
    {500, 9, 0.1405, 0.8948},
    {507, 0, 0.1334, 0.8628},
    {508, 2, 0.1643, 0.9844},
    {520, 0, 0.1306, 0.8605},
    {523, 3, 0.1512, 0.9904},
    {526, 3, 0.1530, 0.9789},
    {528, 1, 0.1532, 0.9890},
    {534, 1, 0.1565, 0.9550},
    {539, 2, 0.1686, 0.9773},
    {541, 2, 0.1551, 0.9847},
    {542, 9, 0.1443, 0.9347},
    {547, 5, 0.1670, 0.9653},
    {550, 6, 0.1912, 0.8577},
    {554, 9, 0.1414, 0.9077},
    {556, 0, 0.1312, 0.8329},
    {557, 6, 0.1943, 0.8570},
    {559, 8, 0.1423, 0.9072},
    {560, 3, 0.1509, 0.9780},
    {562, 3, 0.1525, 0.9797},
    {566, 6, 0.1650, 0.8803},
    {571, 2, 0.1471, 0.9719},
    {574, 9, 0.1489, 0.9029},
    {582, 2, 0.1411, 0.9777},
    {587, 9, 0.1556, 0.8751},
    {591, 1, 0.1585, 0.9836},
    {593, 9, 0.1567, 0.8926},
    {596, 4, 0.1466, 0.9041},
    {604, 9, 0.1597, 0.8743},
    {610, 2, 0.1475, 0.9834},
    {612, 2, 0.1565, 0.9917},
    {613, 1, 0.1558, 0.9908},
    {616, 1, 0.1575, 0.9773},
    {618, 2, 0.1590, 0.9882},
    {619, 3, 0.1575, 0.9802},
    {622, 9, 0.1562, 0.8855},
    {625, 6, 0.2321, 0.8891},
    {626, 6, 0.2476, 0.8849},
    {631, 3, 0.1539, 0.9700},
    {634, 8, 0.1410, 0.9232},
    {635, 2, 0.1656, 0.9999},
    {637, 2, 0.1595, 0.9885},
    {641, 1, 0.1593, 0.9644},
    {643, 9, 0.1533, 0.8942},
    {645, 0, 0.1345, 0.8220},
    };
    return table;
}

}  // namespace vfmcal
