"""Extended BWT of string collections.

Sorting is done by cyclic induced sorting over the multiset itself, with no
end markers. Large repetitive collections can go through a cyclic
prefix-free parse first.
"""
from . import _backend
from .io import (RleEbwt, invert_ebwt, read_ebwt, read_fasta, read_rle, read_samples,
                 run_length_encode, write_fasta, write_outputs)
from .oracle import naive_bwt, oracle_ebwt, oracle_gca
from .pfp.merge import ParseEbwt, ebwt_of_parse, merge, pfp_ebwt, preceding_byte
from .pfp.parse import (PfpError, PfpOutput, SuffixGroup, TriggerConfig, kr_window_hash,
                        parse_collection, select_remainders, suffix_set)
from .sais import (assign_types, bwt_single, ebwt, induced_sort, name_lms_substrings,
                   sais_gca)
from .strings import (EbwtResult, GcaEntry, RootDecomposition, SeqCollection, border_array,
                      conjugate, ebwt_from_gca, expand_gca, omega_compare, root_and_exponent)

backend_name = _backend.default_name

__all__ = [name for name, obj in globals().items()
           if not name.startswith("_") and not isinstance(obj, type(_backend))]
