"""Golden values transcribed from the published tables.

Table 2 / Table 4 rows are (omega exponent k, tau, xi phases) with omega = zeta_N^k.
Table 6 / Table 7 rows are (dimension, twist exponent) with twist = e(r).
"""
from fractions import Fraction as F
from math import sqrt

TABLE2_ZETA = 60
TABLE2 = [
    (12, (0,), [-3.03687, 1.02812, -0.75497, 1.67552, -1.12999, 0.228519]),
    (18, (0,), [0.418879, -0.476051, 1.75517, 1.98968, -3.0118, 2.36101]),
    (42, (0,), [1.67552, -1.12999, 0.228519, -3.03687, 1.02812, -0.75497]),
    (48, (0,), [1.98968, -3.0118, 2.36101, 0.418879, -0.476051, 1.75517]),
    (23, (1,), [-2.58859, 1.33196, 1.6366, -0.961707, -0.29493, -0.798841]),
    (23, (1,), [-0.961707, -0.29493, -0.798841, -2.58859, 1.33196, 1.6366]),
    (47, (1,), [3.06462, -1.80798, -1.19626, -0.601743, 1.85838, -1.73589]),
    (47, (1,), [-0.601743, 1.85838, -1.73589, 3.06462, -1.80798, -1.19626]),
    (35, (1,), [2.69346, -2.69346, 1.0472, 2.69346, -2.69346, 1.0472]),
    (2, (2,), [0.228519, -3.03687, 1.02812, -0.75497, 1.67552, -1.12999]),
    (8, (2,), [2.36101, 0.418879, -0.476051, 1.75517, 1.98968, -3.0118]),
    (32, (2,), [-0.75497, 1.67552, -1.12999, 0.228519, -3.03687, 1.02812]),
    (38, (2,), [1.75517, 1.98968, -3.0118, 2.36101, 0.418879, -0.476051]),
    (3, (3,), [1.6366, -0.961707, -0.29493, -0.798841, -2.58859, 1.33196]),
    (3, (3,), [-0.798841, -2.58859, 1.33196, 1.6366, -0.961707, -0.29493]),
    (27, (3,), [-1.73589, 3.06462, -1.80798, -1.19626, -0.601743, 1.85838]),
    (27, (3,), [-1.19626, -0.601743, 1.85838, -1.73589, 3.06462, -1.80798]),
    (15, (3,), [1.0472, 2.69346, -2.69346, 1.0472, 2.69346, -2.69346]),
    (2, (4,), [1.02812, -0.75497, 1.67552, -1.12999, 0.228519, -3.03687]),
    (8, (4,), [-0.476051, 1.75517, 1.98968, -3.0118, 2.36101, 0.418879]),
    (32, (4,), [-1.12999, 0.228519, -3.03687, 1.02812, -0.75497, 1.67552]),
    (38, (4,), [-3.0118, 2.36101, 0.418879, -0.476051, 1.75517, 1.98968]),
    (23, (5,), [1.33196, 1.6366, -0.961707, -0.29493, -0.798841, -2.58859]),
    (23, (5,), [-0.29493, -0.798841, -2.58859, 1.33196, 1.6366, -0.961707]),
    (47, (5,), [1.85838, -1.73589, 3.06462, -1.80798, -1.19626, -0.601743]),
    (47, (5,), [-1.80798, -1.19626, -0.601743, 1.85838, -1.73589, 3.06462]),
    (35, (5,), [-2.69346, 1.0472, 2.69346, -2.69346, 1.0472, 2.69346]),
]

TABLE4_ZETA = 48
TABLE4 = [
    (16, (0, 0), [0, 0.4373, 0, -2.008, -1.571, 3.076, 1.571, -1.505]),
    (16, (0, 0), [0, -2.008, 0, 0.4373, 1.571, -1.505, -1.571, 3.076]),
    (40, (0, 0), [1.571, -1.505, -1.571, 3.076, 0, -2.008, 0, 0.4373]),
    (40, (0, 0), [-1.571, 3.076, 1.571, -1.505, 0, 0.4373, 0, -2.008]),
    (21, (0, 1), [-1.134, 1.003, -0.0339, 3.045, -0.0339, 3.045, -1.134, 1.003]),
    (45, (0, 1), [-0.0339, 3.045, -1.134, 1.003, -1.134, 1.003, -0.0339, 3.045]),
    (13, (0, 1), [0.2202, -1.398, -1.675, -2.644, -2.842, -1.477, 2.793, 2.312]),
    (13, (0, 1), [2.793, 2.312, -2.842, -1.477, -1.675, -2.644, 0.2202, -1.398]),
    (37, (0, 1), [-1.675, -2.644, 0.2202, -1.398, 2.793, 2.312, -2.842, -1.477]),
    (37, (0, 1), [-2.842, -1.477, 2.793, 2.312, 0.2202, -1.398, -1.675, -2.644]),
    (4, (0, 2), [3.076, 1.571, -1.505, -1.571, 0.4373, 0, -2.008, 0]),
    (4, (0, 2), [-1.505, -1.571, 3.076, 1.571, -2.008, 0, 0.4373, 0]),
    (28, (0, 2), [0.4373, 0, -2.008, 0, 3.076, 1.571, -1.505, -1.571]),
    (28, (0, 2), [-2.008, 0, 0.4373, 0, -1.505, -1.571, 3.076, 1.571]),
    (21, (0, 3), [1.003, -0.0339, 3.045, -1.134, 3.045, -1.134, 1.003, -0.0339]),
    (45, (0, 3), [3.045, -1.134, 1.003, -0.0339, 1.003, -0.0339, 3.045, -1.134]),
    (13, (0, 3), [2.312, -2.842, -1.477, 2.793, -2.644, 0.2202, -1.398, -1.675]),
    (13, (0, 3), [-1.398, -1.675, -2.644, 0.2202, -1.477, 2.793, 2.312, -2.842]),
    (37, (0, 3), [-2.644, 0.2202, -1.398, -1.675, 2.312, -2.842, -1.477, 2.793]),
    (37, (0, 3), [-1.477, 2.793, 2.312, -2.842, -1.398, -1.675, -2.644, 0.2202]),
    (22, (1, 0), [-2.241, -1.335, -0.835, 0.8973, 1.455, 3.03, 0.04963, -1.022]),
    (22, (1, 0), [-0.835, 0.8973, -2.241, -1.335, 0.04963, -1.022, 1.455, 3.030]),
    (22, (1, 0), [0.04963, -1.022, 1.455, 3.03, -0.835, 0.8973, -2.241, -1.335]),
    (22, (1, 0), [1.455, 3.03, 0.04963, -1.022, -2.241, -1.335, -0.835, 0.8973]),
    (6, (1, 0), [2.235, 2.673, 2.235, 2.673, 1.168, -0.8402, 1.168, -0.8402]),
    (6, (1, 0), [1.168, -0.8402, 1.168, -0.8402, 2.235, 2.673, 2.235, 2.673]),
    (15, (1, 1), [0.6315, -3.119, 2.979, -2.324, 0.6315, -3.119, 2.979, -2.324]),
    (39, (1, 1), [2.979, -2.324, 0.6315, -3.119, 2.979, -2.324, 0.6315, -3.119]),
    (7, (1, 1), [2.65, 1.091, 2.736, -0.06957, 1.658, 0.09927, -0.3231, -3.129]),
    (7, (1, 1), [1.658, 0.09927, -0.3231, -3.129, 2.65, 1.091, 2.736, -0.06957]),
    (31, (1, 1), [2.736, -0.06957, 2.65, 1.091, -0.3231, -3.129, 1.658, 0.09927]),
    (31, (1, 1), [-0.3231, -3.129, 1.658, 0.09927, 2.736, -0.06957, 2.65, 1.091]),
    (34, (1, 2), [-1.022, 1.455, 3.03, 0.04963, 0.8973, -2.241, -1.335, -0.835]),
    (34, (1, 2), [0.8973, -2.241, -1.335, -0.835, -1.022, 1.455, 3.03, 0.04963]),
    (34, (1, 2), [3.03, 0.04963, -1.022, 1.455, -1.335, -0.835, 0.8973, -2.241]),
    (34, (1, 2), [-1.335, -0.835, 0.8973, -2.241, 3.03, 0.04963, -1.022, 1.455]),
    (18, (1, 2), [2.673, 2.235, 2.673, 2.235, -0.8402, 1.168, -0.8402, 1.168]),
    (18, (1, 2), [-0.8402, 1.168, -0.8402, 1.168, 2.673, 2.235, 2.673, 2.235]),
    (15, (1, 3), [-3.119, 2.979, -2.324, 0.6315, -3.119, 2.979, -2.324, 0.6315]),
    (39, (1, 3), [-2.324, 0.6315, -3.119, 2.979, -2.324, 0.6315, -3.119, 2.979]),
    (7, (1, 3), [1.091, 2.736, -0.06957, 2.65, 0.09927, -0.3231, -3.129, 1.658]),
    (7, (1, 3), [0.09927, -0.3231, -3.129, 1.658, 1.091, 2.736, -0.06957, 2.65]),
    (31, (1, 3), [-3.129, 1.658, 0.09927, -0.3231, -0.06957, 2.65, 1.091, 2.736]),
    (31, (1, 3), [-0.06957, 2.65, 1.091, 2.736, -3.129, 1.658, 0.09927, -0.3231]),
]

# twists of the 27 D-labels of the J6_1 center, as printed
J6_1_D_TWISTS = [
    F(1, 5), F(3, 10), F(-3, 10), F(-1, 5), F(23, 60), F(23, 60), F(-13, 60), F(-13, 60), F(-5, 12),
    F(1, 30), F(2, 15), F(-7, 15), F(-11, 30), F(1, 20), F(1, 20), F(9, 20), F(9, 20), F(1, 4),
    F(1, 30), F(2, 15), F(-7, 15), F(-11, 30), F(23, 60), F(23, 60), F(-13, 60), F(-13, 60), F(-5, 12),
]

CHI24_5 = 5 + sqrt(24)
CHI24_4 = 4 + sqrt(24)
CHI6_3 = 3 + sqrt(6)
CHI6_2 = 2 + sqrt(6)

TABLE6 = (
    [(1.0, F(r)) for r in (0, F(1, 4), F(1, 2), F(3, 4))]
    + [(CHI24_5, F(r)) for r in (0, F(1, 4), F(1, 2), F(3, 4))]
    + [(2 * CHI6_3, F(r)) for r in (0, 0, F(1, 4), F(3, 4))]
    + [(CHI6_3, F(r)) for r in (0, 0, F(3, 4), F(3, 4), F(1, 2), F(1, 2), F(1, 4), F(1, 4))]
    + [(CHI24_4, r) for r in (F(1, 3), F(5, 6), F(1, 12), F(7, 12), F(11, 24), F(11, 24), F(17, 24), F(17, 24))]
    + [(CHI6_2, r) for r in (F(1, 8),) * 4 + (F(3, 8),) * 4]
)

TABLE7 = (
    [(1.0, F(0)), (1.0, F(1, 2))]
    + [(CHI24_5, F(0)), (CHI24_5, F(1, 2))]
    + [(2 * CHI6_3, F(0)), (2 * CHI6_3, F(0))]
    + [(CHI6_3, r) for r in (F(3, 4), F(3, 4), F(1, 4), F(1, 4))]
    + [(CHI24_4, r) for r in (F(1, 3), F(5, 6), F(11, 24), F(11, 24))]
    + [(CHI6_2, F(1, 8))] * 4
)

U3 = complex(-sqrt(6) - 3, 3 * sqrt(2) + 2 * sqrt(3))
LAMBDA_J6 = 6 * sqrt(10 * (4 + sqrt(15)))
LAMBDA_J24 = 16 * sqrt(3 * (5 + sqrt(24)))
