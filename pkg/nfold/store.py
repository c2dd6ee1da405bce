from threading import Lock
from typing import Callable, Optional

from nfold import cfg, logger
from nfold.basisstore.memory import MemoryStore


def basis_key(kind: str, *matrices, n: Optional[int] = None) -> str:
    '''
    canonical cache key for a value derived from some matrices

    :param kind: what is stored, e.g. ``graver`` or ``complexity``
    :type kind: str

    :param matrices: the IntMatrix arguments the value depends on
    :type matrices: IntMatrix

    :param n: fold count, when the value depends on one
    :type n: int
    '''
    parts = [kind]
    for M in matrices:
        parts.append(f'{M.rows}x{M.cols}:' + ','.join(map(str, M.entries)))
    if n is not None:
        parts.append(f'n={n}')
    return '|'.join(parts)


class BasisStore:
    '''
    Synchronized memo cache for Graver bases and Graver complexities.

    :param store_type: ``memory`` (default) or ``disk`` for a persistent
                       shelve file
    :type store_type: str

    :param data_dir: directory of the shelve file for ``disk``
    :type data_dir: str
    '''

    def __init__(self, store_type: str = 'memory', data_dir: str = cfg.CACHE_DIR):
        self.store_type = store_type
        self.db = self.__get_database(store_type, data_dir=data_dir)
        self.__lock = Lock()
        self.hits = 0
        self.misses = 0

    def __get_database(self, store_type: str, **kwargs):
        '''
        get instance of the cache backend

        :param store_type: type of cache to be used; either memory or disk
        :type store_type: str
        '''
        if store_type == 'disk':
            from nfold.basisstore.shelf import ShelfStore
            return ShelfStore(data_dir=kwargs.get('data_dir'), file_name=cfg.CACHE_FILE)
        if store_type != 'memory':
            raise ValueError(f'unknown store type {store_type!r}')
        return MemoryStore()

    def get(self, key: str):
        with self.__lock:
            return self.db.get(key)

    def put(self, key: str, value):
        with self.__lock:
            self.db.put(key, value)

    def delete(self, key: str):
        with self.__lock:
            return self.db.delete(key)

    def get_or_compute(self, key: str, factory: Callable):
        '''
        return the cached value of ``key``, computing and storing it with
        ``factory()`` when absent; the lock is not held during computation so
        nested lookups from the factory do not deadlock
        '''
        with self.__lock:
            value = self.db.get(key)
            if value is not None:
                self.hits += 1
            else:
                self.misses += 1
        if value is not None:
            logger.debug(f'[CACHE] hit {key[:60]}')
            return value
        value = factory()
        with self.__lock:
            existing = self.db.get(key)
            if existing is not None:
                return existing
            self.db.put(key, value)
        logger.debug(f'[CACHE] stored {key[:60]}')
        return value
