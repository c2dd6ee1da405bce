from nfold.basisstore.Ibasisstore import IBasisStore


class MemoryStore(IBasisStore):

    '''
    Keeps Graver bases and complexities in a python dictionary for the
    lifetime of the process
    '''

    def __init__(self):
        self.__db = dict()

    def connect(self):
        return self.__db

    def put(self, key: str, value, **kwargs):
        '''
        :param key: canonical key of the matrices the value belongs to
        :type key: str

        :param value: basis or complexity to be kept
        :type value: any
        '''
        self.__db[key] = value

    def get(self, key: str, **kwargs):
        return self.__db.get(key, None)

    def delete(self, key: str, **kwargs):
        '''
        forget a value

        :returns: the removed value or None when the key was unknown
        '''
        return self.__db.pop(key, None)

    def __len__(self):
        return len(self.__db)
