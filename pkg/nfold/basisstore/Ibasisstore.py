from abc import ABC, abstractmethod


class IBasisStore(ABC):

    @abstractmethod
    def put(self, key: str, value):
        '''
        Implement this function to keep a computed basis
        '''

    @abstractmethod
    def get(self, key: str):
        '''
        Implement this function to fetch a computed basis, None when absent
        '''

    @abstractmethod
    def delete(self, key: str):
        '''
        Implement this function to forget a computed basis
        '''

    @abstractmethod
    def connect(self):
        '''
        Implement this function to open the backing storage
        '''
