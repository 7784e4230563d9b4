"""Values transcribed from the printed tables, in the package's text syntax."""

# rotated index of 4_1, entries (n, n') for 0 <= n, n' <= 1, as printed
INDEX_41 = {
    (0, 0): "1 - 8*q - 9*q^2 + 18*q^3 + 46*q^4 + 90*q^5 + 62*q^6 + 10*q^7",
    (0, 1): "-q^(-1/2) + q^(1/2) - q^(3/2) + 6*q^(5/2) + 20*q^(7/2) + 29*q^(9/2) + 25*q^(11/2)",
    (1, 0): "-q^(-1/2) + q^(1/2) - q^(3/2) + 6*q^(5/2) + 20*q^(7/2) + 29*q^(9/2)",
    (1, 1): "2*q + 2*q^2 + 7*q^3 + 8*q^4 + 3*q^5 - 22*q^6 - 67*q^7",
}
# last printed exponent (u-units) of each entry
INDEX_41_TOP = {(0, 0): 14, (0, 1): 11, (1, 0): 9, (1, 1): 14}

INSERTED_41 = {
    (0, 0): "-3 + 15*q + 24*q^2 - 15*q^3 - 69*q^4 - 174*q^5 - 183*q^6 - 165*q^7",
    (0, 1): "2*q^(-1/2) - q^(1/2) + 4*q^(3/2) - 7*q^(5/2) - 34*q^(7/2) - 64*q^(9/2)",
    (1, 0): "q^(-3/2) - q^(-1/2) - q^(1/2) + q^(3/2) - 5*q^(5/2) - 26*q^(7/2) - 48*q^(9/2)",
    (1, 1): "-1 - 2*q - 4*q^2 - 9*q^3 - 17*q^4 - 13*q^5 + 10*q^6 + 77*q^7",
}
INSERTED_41_TOP = {(0, 0): 14, (0, 1): 9, (1, 0): 9, (1, 1): 14}

Q1_41 = ("q - 1", [["2 - q", "-q^(1/2)"], ["q^(1/2)", "-q - 1 + q^-1"]])
Q1_41_DET = "1 + 2*q^-1"
Q2_41 = ("q - 1", [["-1", "q^(1/2)"], ["-q^(1/2)", "-q^2 + 2*q + 1 - q^-1"]])
Q2_41_DET = "1 + q^-1"

Q_52_DEN = "(1 - q^2)*(1 - q^3)"
Q1_52 = [
    ["-q^2 - q^3 - q^4",
     "q^(1/2) - q^(3/2) + q^(7/2) + 2*q^(9/2) + 2*q^(11/2) - q^(13/2)",
     "-q^7"],
    ["-q^(3/2) - q^(5/2) - q^(7/2)",
     "1 - q + q^3 + 2*q^4 + 2*q^5 - q^6",
     "-q^(13/2)"],
    ["-1 - q^-2 - q^-1",
     "-q^(-5/2) + 2*q^(-3/2) + 2*q^(-1/2) + q^(1/2) - q^(5/2) + q^(7/2)",
     "-q^3"],
]
Q2_52 = [
    ["-q - 2*q^2 - q^3 + q^5",
     "q^(1/2) + q^(5/2) + q^(7/2) + q^(9/2) + q^(11/2) - q^(13/2)",
     "-q^7"],
    ["-q^(-1/2) - q^(3/2) - q^(7/2)",
     "4 - q^-1 - q - q^2 - q^3 + q^4 + 5*q^5 - 2*q^6",
     "q^(11/2) - 2*q^(13/2)"],
    ["-2 + q^-4 + q^-3 - q^-2 - 2*q^-1",
     "q^(-9/2) - 2*q^(-7/2) - 4*q^(-5/2) + 2*q^(-3/2) + 4*q^(-1/2) + 4*q^(1/2) - q^(3/2) - 2*q^(5/2) + 2*q^(7/2)",
     "1 + q - q^2 - 2*q^3"],
]

# (-2,3,7): leading monomials of the 6 x 6 window as (coefficient, q-exponent)
LEAD_237 = [
    [(1, "0"), (-1, "-9/2"), (1, "-19"), (-1, "-87/2"), (1, "-78"), (-1, "-245/2")],
    [(-1, "9/2"), (6, "2"), (-1, "-27/2"), (1, "-38"), (-1, "-145/2"), (1, "-117")],
    [(1, "17"), (-1, "27/2"), (1, "1"), (-1, "-45/2"), (1, "57"), (-1, "-203/2")],
    [(-1, "75/2"), (1, "34"), (-1, "45/2"), (1, "4"), (-1, "-63/2"), (1, "-76")],
    [(1, "66"), (-1, "125/2"), (1, "51"), (-1, "63/2"), (1, "2"), (-1, "-81/2")],
    [(-1, "205/2"), (1, "99"), (-1, "175/2"), (1, "68"), (-1, "81/2"), (1, "6")],
]

# last computed coefficients at q^158 / q^(315/2)
LAST_237 = [
    [3099301802486871, 15368338814987064, 39577501827964202, -717771103116611523,
     -7908419005020915850, 1907856058463675359575],
    [-2510483414752309, 3797180920247821, 46280099948395184, -661349858819489021,
     6373738664932074312, 1164148757149541167314],
    [-830392595916755, -1589679235709546, 5002197250330240, -59052244117713785,
     4279809698340893447, -25447538708964750026],
    [21883932028960, 52039830772006, -208430252255007, 5021231467477637,
     -203334247925102214, -14980307260595602909],
    [68212497673, -14703374329, -986065940989, 1182082042782,
     3294633659679268, 225454885754595400],
    [7690268, 27909767, -486018210, -12829067397, 3046756706011, 1068804228132263],
]

DET_237 = "q^-15*(1 - q)^2*(1 - q^2)^4*(1 - q^3)^4*(1 - q^4)^2"

Q_237_DEN = "(1 - q^3)*(1 - q^4)"
Q_237 = [
    ["0", "q^(-1/2)*(q^2 + 1)", "q^-19*(q^2 - 1)^2*(q^2 + 1)", "q^(-77/2)*(-q^4 - q^2 - 1)",
     "q^-74*(q^4 - 1)^2", "q^(-221/2)"],
    ["q^(15/2)*(q^4 + q^3 + 2*q^2 + q + 1)", "(q - 1)^2*(q^4 + q^3 + 2*q^2 + q + 1)",
     "-q^(-23/2)*(q + 1)*(q^2 + 1)^2", "q^-37*(q^2 + 1)*(q^3 - 1)^2", "q^(-131/2)*(q^2 + 1)", "0"],
    ["0", "q^(37/2)*(q^2 + 1)", "(q^2 - 1)^2*(q^2 + 1)", "q^(-39/2)*(-q^4 - q^2 - 1)",
     "q^-55*(q^4 - 1)^2", "q^(-183/2)"],
    ["q^(89/2)*(q^4 + q^3 + 2*q^2 + q + 1)", "(q - 1)^2*q^39*(q^4 + q^3 + 2*q^2 + q + 1)",
     "-q^(51/2)*(q + 1)*(q^2 + 1)^2", "(q^2 + 1)*(q^3 - 1)^2", "q^(-57/2)*(q^2 + 1)", "0"],
    ["0", "q^(147/2)*(q^2 + 1)", "q^58*(q^2 - 1)^2*(q^2 + 1)", "-q^(71/2)*(q^4 + q^2 + 1)",
     "(q^4 - 1)^2", "q^(-73/2)"],
    ["q^(235/2)*(q^4 + q^3 + 2*q^2 + q + 1)", "(q - 1)^2*q^112*(q^4 + q^3 + 2*q^2 + q + 1)",
     "-q^(197/2)*(q + 1)*(q^2 + 1)^2", "q^75*(q^2 + 1)*(q^3 - 1)^2", "q^(89/2)*(q^2 + 1)", "0"],
]

# q-difference operators, coefficients P_j(x, q) for sigma^j
AHAT_41 = [
    "q^2*x^2*(q^3*x^2 - 1)",
    "-q^(1/2)*(1 - q^2*x^2)*(1 - q*x - q*x^2 - q^3*x^2 - q^3*x^3 + q^4*x^4)",
    "q^3*x^2*(-1 + q*x^2)",
]
AHAT_41_O = [
    "q^(3/2)*x^2*(-1 + q^3*x^2)*(1 + q*x + q^3*x^2)",
    "(-1 + q*x)*(1 + q*x)*(1 + x - q*x - q*x^2 - q^3*x^2 - q*x^3 - 2*q^3*x^3 - q^5*x^3"
    " - q^3*x^4 - q^5*x^4 + q^4*x^5 - q^5*x^5 + q^6*x^6)",
    "q^(7/2)*x^2*(-1 + q*x^2)*(1 + x + q*x^2)",
]
AHAT_41_O2 = [
    "q^(3/2)*x^2*(-1 + q^2*x)*(1 + q^2*x)",
    "(-1 + q^3*x^2)*(1 - q*x - q^2*x^2 - q^4*x^2 - q^4*x^3 + q^6*x^4)",
    "q^(7/2)*x^2*(-1 + q*x)*(1 + q*x)",
]
# as printed, including the repeated terms; shifts are sigma^-j
AHAT_52 = [
    "-q^-2*x^2*(1 - q^-2*x)*(1 + q^-2*x)*(1 - q^-5*x^2)",
    "q^(3/2)*x^-3*(1 - q^-1*x)*(1 + q^-1*x)*(1 - q^-5*x^2)*(1 - q^-1*x - q^-1*x^2 - q^-4*x^2"
    " + q^-2*x^2 + q^-3*x^2 + q^-2*x^3 + q^-5*x^3 + q^-5*x^4 + q^-5*x^4 - q^-6*x^5)",
    "q^5*x^-5*(1 - q^-2*x)*(1 + q^-2*x)*(1 - q^-1*x^2)*(1 - q^-2*x - q^-2*x - q^-2*x^2"
    " - q^-5*x^2 + q^-4*x^3 + q^-7*x^3 - q^-5*x^3 - q^-6*x^3 + q^-7*x^4 - q^-9*x^5)",
    "q^(11/2)*x^-5*(1 - q^-1*x)*(1 + q^-1*x)*(1 - q^-1*x^2)",
]

CLASSICAL_RATIO_41_O = "2*(x^2 - 1)*(x^2 + x + 1)"
CLASSICAL_RATIO_41_O2 = "x^2 - 1"
