import shelve
from os import makedirs, path

from nfold import logger
from nfold.basisstore.Ibasisstore import IBasisStore


class ShelfStore(IBasisStore):

    '''
    Persists Graver bases in a :mod:`shelve` file so repeated runs over the
    same pair of matrices reuse them

    :param data_dir: directory of the shelve file, created when missing
    :type data_dir: str

    :param file_name: name of the shelve file inside ``data_dir``
    :type file_name: str
    '''

    def __init__(self, data_dir: str, file_name: str):
        self.__data_dir = data_dir
        self.__file = path.join(data_dir, file_name)
        self.__check_data_dir()

    def __check_data_dir(self):
        if not path.exists(self.__data_dir):
            makedirs(self.__data_dir)

    def connect(self):
        return shelve.open(self.__file)

    def put(self, key: str, value, **kwargs):
        with self.connect() as db:
            db[key] = value
        logger.debug(f'[SHELVE CACHE] stored {key[:60]}')

    def get(self, key: str, **kwargs):
        with self.connect() as db:
            return db.get(key, None)

    def delete(self, key: str, **kwargs):
        with self.connect() as db:
            return db.pop(key, None)
