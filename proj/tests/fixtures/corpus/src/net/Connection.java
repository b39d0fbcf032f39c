package net;

import java.io.IOException;
import java.io.InputStream;
import java.net.Socket;

// A client connection; reads are retried when the socket times out.
public class Connection {
    private final Socket socket;
    private int maxRetry = 3;

    public Connection(Socket socket) {
        this.socket = socket;
    }

    public int read(byte[] buffer) throws IOException {
        InputStream in = socket.getInputStream();
        for (int attempt = 0; attempt < maxRetry; attempt++) {
            int count = in.read(buffer);
            if (count >= 0) {
                return count;
            }
        }
        return -1;
    }
}
