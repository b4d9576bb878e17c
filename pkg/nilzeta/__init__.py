'''Local normal zeta functions of the free class-two nilpotent groups F_{2,d}.'''
__version__ = '0.1'

from . import utils, exactalg, combinat, intlinalg, geometry, zetacore, oracle
