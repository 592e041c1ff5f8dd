from src.verify.generators import case_seed, gen_operator
from src.verify.params import ChainParams, DeltaParams, EmbeddingParams, SolverSuiteParams, TongParams
from src.verify.suites import SUITES, suite_chain, suite_delta, suite_embedding, suite_solver, suite_tong
