from qftbell.gram import GramMatrix, overlap_coefficients
from qftbell.smear.cache import cached_smear
from qftbell.smear.diamond import diamond_gram, normalize_quartet
from qftbell.smear.momentum import mass_shell_transform, momentum_inner_product
from qftbell.smear.position import smeared_hadamard, smeared_pauli_jordan
